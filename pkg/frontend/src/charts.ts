/**
 * Minimal dependency-free SVG charts. When SVG rendering is unavailable
 * (no getBBox, or ?charts=off) callers skip the chart entirely; every
 * view also renders its data as an accessible table, so nothing is lost.
 */

export function chartsAvailable(): boolean {
  if (typeof window === "undefined") return false;
  if (new URLSearchParams(window.location.search).get("charts") === "off") {
    return false;
  }
  const svg = (window as unknown as { SVGElement?: { prototype: object } })
    .SVGElement;
  if (!svg) return false;
  return typeof (svg.prototype as { getBBox?: unknown }).getBBox === "function";
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

export interface Bar {
  label: string;
  value: number | null;
}

/** Horizontal bars with a reference line at 1.0. */
export function barChart(container: HTMLElement, bars: Bar[]): void {
  const width = 560;
  const rowHeight = 26;
  const labelWidth = 130;
  const height = bars.length * rowHeight + 24;
  const values = bars.map((b) => b.value ?? 0);
  const maxValue = Math.max(1.25, ...values) * 1.05;
  const scale = (width - labelWidth - 60) / maxValue;

  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });

  bars.forEach((bar, i) => {
    const y = i * rowHeight + 8;
    const text = svgEl("text", {
      x: String(labelWidth - 8),
      y: String(y + 13),
      "text-anchor": "end",
      "font-size": "12",
    });
    text.textContent = bar.label;
    svg.appendChild(text);
    if (bar.value !== null) {
      svg.appendChild(svgEl("rect", {
        x: String(labelWidth),
        y: String(y),
        width: String(Math.max(1, bar.value * scale)),
        height: "18",
        class: bar.value >= 1 ? "bar over" : "bar under",
      }));
      const valueText = svgEl("text", {
        x: String(labelWidth + bar.value * scale + 6),
        y: String(y + 13),
        "font-size": "11",
      });
      valueText.textContent = bar.value.toFixed(3);
      svg.appendChild(valueText);
    }
  });

  const refX = labelWidth + 1.0 * scale;
  svg.appendChild(svgEl("line", {
    x1: String(refX), y1: "0", x2: String(refX),
    y2: String(bars.length * rowHeight + 10),
    class: "ref-line",
  }));
  const refLabel = svgEl("text", {
    x: String(refX), y: String(height - 4),
    "text-anchor": "middle", "font-size": "11",
  });
  refLabel.textContent = "1.0";
  svg.appendChild(refLabel);
  container.appendChild(svg);
}

export interface Line {
  label: string;
  points: { x: number; y: number | null }[];
}

/** One polyline per series; null points leave gaps. */
export function lineChart(container: HTMLElement, lines: Line[],
                          xTicks: number[]): void {
  const width = 360;
  const height = 220;
  const pad = { left: 44, right: 12, top: 10, bottom: 24 };
  const yValues = lines.flatMap((l) =>
    l.points.map((p) => p.y).filter((y): y is number => y !== null));
  const yMax = Math.max(1.1, ...yValues) * 1.05;
  const yMin = Math.min(0.9, ...yValues) * 0.95;
  const xMin = Math.min(...xTicks);
  const xMax = Math.max(...xTicks);

  const sx = (x: number) =>
    pad.left + ((x - xMin) / Math.max(1, xMax - xMin)) *
      (width - pad.left - pad.right);
  const sy = (y: number) =>
    height - pad.bottom -
      ((y - yMin) / (yMax - yMin)) * (height - pad.top - pad.bottom);

  const svg = svgEl("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    role: "img",
  });

  const refY = sy(1.0);
  svg.appendChild(svgEl("line", {
    x1: String(pad.left), y1: String(refY),
    x2: String(width - pad.right), y2: String(refY),
    class: "ref-line",
  }));

  for (const x of xTicks) {
    const label = svgEl("text", {
      x: String(sx(x)), y: String(height - 6),
      "text-anchor": "middle", "font-size": "10",
    });
    label.textContent = String(x);
    svg.appendChild(label);
  }

  lines.forEach((line, idx) => {
    let segment: string[] = [];
    const flush = () => {
      if (segment.length > 1) {
        svg.appendChild(svgEl("polyline", {
          points: segment.join(" "),
          class: `series series-${idx}`,
          fill: "none",
        }));
      }
      segment = [];
    };
    for (const point of line.points) {
      if (point.y === null) {
        flush();
      } else {
        segment.push(`${sx(point.x)},${sy(point.y)}`);
        svg.appendChild(svgEl("circle", {
          cx: String(sx(point.x)), cy: String(sy(point.y)), r: "2.5",
          class: `series series-${idx}`,
        }));
      }
    }
    flush();
  });

  container.appendChild(svg);
}
