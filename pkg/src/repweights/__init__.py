"""Representation-distortion metrics for the U.S. House, Senate, and
Electoral College, computed from census-style extract files."""

__version__ = "0.1.0"

from .model import (  # noqa: F401
    BaselineVariant,
    Body,
    BodyAllocation,
    CategoryRegistry,
    Dataset,
    DemographicTable,
    GeoUnit,
    MetricsRow,
    Scenario,
    UnitKind,
    VARIABLES,
    registry_for,
    scenario_from_dict,
)
from .validation import ValidationReport, validate_dataset  # noqa: F401
from .ingest import (  # noqa: F401
    HarmonizationMap,
    harmonize,
    load_dataset,
    parse_extract,
    serialize_extract,
)
from .apportion import (  # noqa: F401
    SeatApportionment,
    build_ec,
    build_house,
    build_senate,
    huntington_hill,
    unit_weight,
)
from .metrics import (  # noqa: F401
    BaselinePopulation,
    absolute_weight,
    baseline_population,
    baseline_proportion,
    compute_metrics,
    excess_population,
    relative_weight,
    represented_proportion,
)
from .trends import TrendSeries, compute_trends  # noqa: F401
from .report import figure_data, render_table  # noqa: F401
