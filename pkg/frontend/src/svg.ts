/**
 * Minimal deterministic SVG plotting: line charts with axes, tick labels,
 * optional shaded bands, and a legend.  Output depends only on the input
 * data, so identical inputs yield byte-identical files.
 */

export interface Series {
  label: string;
  color: string;
  x: number[];
  y: number[];
  /** optional ±band half-widths per point (shaded region) */
  band?: number[];
  dash?: boolean;
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xTicks: { value: number; label: string }[];
  yTicks: { value: number; label: string }[];
  xDomain: [number, number];
  yDomain: [number, number];
  series: Series[];
}

const PANEL_W = 430;
const PANEL_H = 340;
const MARGIN = { left: 56, right: 14, top: 36, bottom: 44 };

function fmt(v: number): string {
  // fixed short representation keeps files identical across runs
  return Number(v.toFixed(3)).toString();
}

function scale(value: number, domain: [number, number], range: [number, number]): number {
  const t = (value - domain[0]) / (domain[1] - domain[0]);
  return range[0] + t * (range[1] - range[0]);
}

function renderPanel(spec: PanelSpec, xOffset: number): string {
  const x0 = xOffset + MARGIN.left;
  const x1 = xOffset + PANEL_W - MARGIN.right;
  const y0 = PANEL_H - MARGIN.bottom;
  const y1 = MARGIN.top;
  const sx = (v: number) => scale(v, spec.xDomain, [x0, x1]);
  const sy = (v: number) => scale(v, spec.yDomain, [y0, y1]);

  const parts: string[] = [];
  parts.push(
    `<text x="${fmt((x0 + x1) / 2)}" y="18" text-anchor="middle" font-size="13" font-weight="bold">${spec.title}</text>`,
  );

  for (const tick of spec.yTicks) {
    const y = sy(tick.value);
    parts.push(
      `<line x1="${fmt(x0)}" y1="${fmt(y)}" x2="${fmt(x1)}" y2="${fmt(y)}" stroke="#ddd" stroke-width="1"/>`,
      `<text x="${fmt(x0 - 6)}" y="${fmt(y + 3)}" text-anchor="end" font-size="10">${tick.label}</text>`,
    );
  }
  for (const tick of spec.xTicks) {
    const x = sx(tick.value);
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(y0)}" x2="${fmt(x)}" y2="${fmt(y0 + 4)}" stroke="#333" stroke-width="1"/>`,
      `<text x="${fmt(x)}" y="${fmt(y0 + 16)}" text-anchor="middle" font-size="10">${tick.label}</text>`,
    );
  }
  parts.push(
    `<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x1)}" y2="${fmt(y0)}" stroke="#333" stroke-width="1"/>`,
    `<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x0)}" y2="${fmt(y1)}" stroke="#333" stroke-width="1"/>`,
    `<text x="${fmt((x0 + x1) / 2)}" y="${fmt(PANEL_H - 8)}" text-anchor="middle" font-size="11">${spec.xLabel}</text>`,
    `<text x="${fmt(xOffset + 14)}" y="${fmt((y0 + y1) / 2)}" text-anchor="middle" font-size="11" transform="rotate(-90 ${fmt(xOffset + 14)} ${fmt((y0 + y1) / 2)})">${spec.yLabel}</text>`,
  );

  for (const s of spec.series) {
    if (s.band) {
      const upper = s.x.map((x, i) => `${fmt(sx(x))},${fmt(sy(s.y[i] + s.band![i]))}`);
      const lower = s.x
        .map((x, i) => `${fmt(sx(x))},${fmt(sy(s.y[i] - s.band![i]))}`)
        .reverse();
      parts.push(
        `<polygon class="band" points="${upper.concat(lower).join(" ")}" fill="${s.color}" opacity="0.18"/>`,
      );
    }
  }
  for (const s of spec.series) {
    const pts = s.x.map((x, i) => `${fmt(sx(x))},${fmt(sy(s.y[i]))}`).join(" ");
    const dash = s.dash ? ' stroke-dasharray="5,3"' : "";
    parts.push(
      `<polyline class="curve" points="${pts}" fill="none" stroke="${s.color}" stroke-width="1.6"${dash}/>`,
    );
  }
  return parts.join("\n");
}

export function renderFigure(panels: PanelSpec[], legend: Series[]): string {
  const width = PANEL_W * panels.length;
  const legendH = 22 * Math.ceil(legend.length / 6) + 8;
  const height = PANEL_H + legendH;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" font-family="Helvetica,Arial,sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
  ];
  panels.forEach((panel, i) => parts.push(renderPanel(panel, i * PANEL_W)));
  legend.forEach((s, i) => {
    const lx = 56 + (i % 6) * 130;
    const ly = PANEL_H + 14 + Math.floor(i / 6) * 22;
    const dash = s.dash ? ' stroke-dasharray="5,3"' : "";
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${s.color}" stroke-width="2"${dash}/>`,
      `<text x="${lx + 27}" y="${ly + 3}" font-size="11">${s.label}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export const PALETTE = [
  "#4269d0",
  "#efb118",
  "#ff725c",
  "#6cc5b0",
  "#3ca951",
  "#ff8ab7",
  "#a463f2",
  "#97bbf5",
  "#9c6b4e",
  "#9498a0",
];
