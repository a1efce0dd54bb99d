/**
 * Figure kind "expt2-curves": final-epoch accuracy vs model depth, mean
 * over seeds with a ±1 standard deviation band, train and eval series, one
 * panel per accuracy kind.  Runs may be excluded explicitly via drop-runs
 * (the default drops nothing); a flag switches to full learning curves.
 */

import { column, parseCsv, SchemaError } from "./csv.js";
import { PALETTE, PanelSpec, renderFigure, Series } from "./svg.js";

export const EXPT2_COLUMNS = [
  "depth",
  "seed",
  "epoch",
  "loss",
  "train_ss",
  "train_ms",
  "eval_ss",
  "eval_ms",
  "grad_norm",
];

export interface RunKey {
  depth: number;
  seed: number;
}

export interface Expt2Data {
  /** metric rows keyed "depth:seed", ordered by epoch */
  runs: Map<string, { epoch: number[]; metrics: Map<string, number[]> }>;
  depths: number[];
}

const METRICS = ["loss", "train_ss", "train_ms", "eval_ss", "eval_ms", "grad_norm"];

export function parseExpt2(text: string, dropRuns: RunKey[] = []): Expt2Data {
  const table = parseCsv(text, EXPT2_COLUMNS);
  const depth = column(table, "depth");
  const seed = column(table, "seed");
  const epoch = column(table, "epoch");
  const dropped = new Set(dropRuns.map((r) => `${r.depth}:${r.seed}`));

  const runs: Expt2Data["runs"] = new Map();
  for (let r = 0; r < depth.length; r++) {
    const key = `${depth[r]}:${seed[r]}`;
    if (dropped.has(key)) continue;
    if (!runs.has(key)) {
      runs.set(key, { epoch: [], metrics: new Map(METRICS.map((m) => [m, []])) });
    }
    const run = runs.get(key)!;
    run.epoch.push(epoch[r]);
    for (const m of METRICS) {
      run.metrics.get(m)!.push(column(table, m)[r]);
    }
  }
  if (runs.size === 0) {
    throw new SchemaError("no runs left after applying drop-runs");
  }
  const depths = [...new Set([...runs.keys()].map((k) => Number(k.split(":")[0])))].sort(
    (a, b) => a - b,
  );
  return { runs, depths };
}

function meanStd(values: number[]): { mean: number; std: number } {
  const mean = values.reduce((a, b) => a + b, 0) / values.length;
  const varsum = values.reduce((a, b) => a + (b - mean) ** 2, 0) / values.length;
  return { mean, std: Math.sqrt(varsum) };
}

/** final-epoch value of one metric per run, grouped by depth */
export function finalByDepth(data: Expt2Data, metric: string): Map<number, number[]> {
  const grouped = new Map<number, number[]>();
  for (const [key, run] of data.runs) {
    const d = Number(key.split(":")[0]);
    const series = run.metrics.get(metric);
    if (!series) throw new SchemaError(`missing column '${metric}'`);
    const last = series[run.epoch.indexOf(Math.max(...run.epoch))];
    if (!grouped.has(d)) grouped.set(d, []);
    grouped.get(d)!.push(last);
  }
  return grouped;
}

export function depthSeries(
  data: Expt2Data,
  metric: string,
  label: string,
  color: string,
  dash: boolean,
): Series {
  const grouped = finalByDepth(data, metric);
  const x = data.depths;
  const stats = x.map((d) => meanStd(grouped.get(d) ?? []));
  return {
    label,
    color,
    dash,
    x,
    y: stats.map((s) => s.mean),
    band: stats.map((s) => s.std),
  };
}

function accuracyTicks(): { value: number; label: string }[] {
  return [0, 0.25, 0.5, 0.75, 1].map((v) => ({ value: v, label: v.toString() }));
}

export function renderExpt2(data: Expt2Data): string {
  const panel = (title: string, trainMetric: string, evalMetric: string): PanelSpec => ({
    title,
    xLabel: "layer pairs",
    yLabel: "accuracy",
    xTicks: data.depths.map((d) => ({ value: d, label: d.toString() })),
    yTicks: accuracyTicks(),
    xDomain: [Math.min(...data.depths), Math.max(...data.depths)],
    yDomain: [0, 1],
    series: [
      depthSeries(data, trainMetric, "train", PALETTE[0], false),
      depthSeries(data, evalMetric, "eval", PALETTE[2], true),
    ],
  });
  const p1 = panel("Single-sample accuracy", "train_ss", "eval_ss");
  const p2 = panel("Many-sample accuracy", "train_ms", "eval_ms");
  return renderFigure([p1, p2], p1.series);
}

/** learning curves: one line per depth, metric vs epoch, averaged over seeds */
export function renderLearningCurves(data: Expt2Data, metric: string): string {
  const byDepth = new Map<number, { epoch: number[]; values: number[][] }>();
  for (const [key, run] of data.runs) {
    const d = Number(key.split(":")[0]);
    if (!byDepth.has(d)) byDepth.set(d, { epoch: run.epoch, values: [] });
    byDepth.get(d)!.values.push(run.metrics.get(metric)!);
  }
  const series: Series[] = data.depths.map((d, i) => {
    const entry = byDepth.get(d)!;
    const mean = entry.epoch.map(
      (_, t) => entry.values.reduce((a, v) => a + v[t], 0) / entry.values.length,
    );
    return {
      label: `depth ${d}`,
      color: PALETTE[i % PALETTE.length],
      x: entry.epoch,
      y: mean,
    };
  });
  const epochs = series[0].x;
  const yMax = metric === "loss" ? Math.max(...series.flatMap((s) => s.y)) : 1;
  const panel: PanelSpec = {
    title: `${metric} by epoch`,
    xLabel: "epoch",
    yLabel: metric,
    xTicks: [0, 0.25, 0.5, 0.75, 1].map((f) => {
      const v = Math.round(f * Math.max(...epochs));
      return { value: v, label: v.toString() };
    }),
    yTicks: [0, 0.25, 0.5, 0.75, 1].map((f) => ({
      value: f * yMax,
      label: (f * yMax).toFixed(2),
    })),
    xDomain: [0, Math.max(...epochs)],
    yDomain: [0, yMax],
    series,
  };
  return renderFigure([panel], series);
}
