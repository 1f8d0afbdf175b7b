/**
 * Display formatting only — the values themselves are always service
 * payload fields, never recomputed client-side.
 */

export function fmtWeight(value: number | null): string {
  if (value === null || value === undefined) return "--";
  return value.toFixed(3);
}

/** Comma-grouped integer, half away from zero, locale-independent. */
export function fmtExcess(value: number): string {
  const sign = value < 0 ? "-" : "";
  const rounded = Math.round(Math.abs(value));
  return sign + String(rounded).replace(/\B(?=(\d{3})+(?!\d))/g, ",");
}

export function fmtProportion(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

const CATEGORY_NAMES: Record<string, string> = {
  white_nh: "White",
  hispanic: "Hispanic",
  black_nh: "Black",
  asian_nh: "Asian",
  multiple_nh: "Multiple",
  aian_nh: "AIAN",
  nhopi_nh: "NHOPI",
  other_nh: "Other",
  age_0_17: "0-17",
  age_18_39: "18-39",
  age_40_64: "40-64",
  age_65_plus: "65+",
  female: "Female",
  male: "Male",
  rural: "Rural",
  urban: "Urban",
  urban_cluster: "Urban Cluster",
  urbanized_area: "Urbanized Area",
  renter: "Renter",
  owner: "Owner",
  owner_mortgage: "Owner: Mortgage",
  owner_clear: "Owner: Clear",
};

export function categoryName(code: string): string {
  return CATEGORY_NAMES[code] ?? code;
}

export const BODY_NAMES: Record<string, string> = {
  house: "House",
  senate: "Senate",
  ec: "Electoral College",
};

export const VARIABLES = [
  "race_ethnicity",
  "age_category",
  "sex",
  "rural_urban",
  "housing_status",
];

export const VARIABLE_NAMES: Record<string, string> = {
  race_ethnicity: "Race/Ethnicity",
  age_category: "Age Category",
  sex: "Sex",
  rural_urban: "Rural/Urban Status",
  housing_status: "Housing Status",
};

export const BASELINES: Record<string, string> = {
  with_dc: "With DC",
  without_dc: "Without DC",
  with_dc_and_pr: "With DC + Puerto Rico",
};
