/**
 * Figure kind "expt1-panels": per-graph measurement probabilities as a
 * function of the edge angle, one curve per |1>-count, two panels.
 */

import { column, parseCsv, SchemaError } from "./csv.js";
import { PALETTE, PanelSpec, renderFigure, Series } from "./svg.js";

export const EXPT1_COLUMNS = ["alpha", "k", "prob_g1", "prob_g2", "accuracy"];

export interface Expt1Data {
  alphas: number[];
  /** probsG1[k][i] = P(k ones | graph 1) at alphas[i] */
  probsG1: number[][];
  probsG2: number[][];
  accuracy: number[];
  kValues: number[];
}

export function parseExpt1(text: string): Expt1Data {
  const table = parseCsv(text, EXPT1_COLUMNS);
  const alphaCol = column(table, "alpha");
  const kCol = column(table, "k");
  const g1 = column(table, "prob_g1");
  const g2 = column(table, "prob_g2");
  const acc = column(table, "accuracy");

  const alphas = [...new Set(alphaCol)].sort((a, b) => a - b);
  const kValues = [...new Set(kCol)].sort((a, b) => a - b);
  const index = new Map(alphas.map((a, i) => [a, i]));

  const probsG1 = kValues.map(() => new Array<number>(alphas.length).fill(NaN));
  const probsG2 = kValues.map(() => new Array<number>(alphas.length).fill(NaN));
  const accuracy = new Array<number>(alphas.length).fill(NaN);
  for (let r = 0; r < alphaCol.length; r++) {
    const i = index.get(alphaCol[r])!;
    const k = kValues.indexOf(kCol[r]);
    probsG1[k][i] = g1[r];
    probsG2[k][i] = g2[r];
    accuracy[i] = acc[r];
  }
  for (const rows of [probsG1, probsG2]) {
    for (const row of rows) {
      if (row.some(Number.isNaN)) {
        throw new SchemaError("incomplete grid: some (alpha, k) pairs are missing");
      }
    }
  }
  return { alphas, probsG1, probsG2, accuracy, kValues };
}

const PI = Math.PI;

function alphaTicks(): { value: number; label: string }[] {
  return [
    { value: -PI, label: "-π" },
    { value: -PI / 2, label: "-π/2" },
    { value: 0, label: "0" },
    { value: PI / 2, label: "π/2" },
    { value: PI, label: "π" },
  ];
}

function probTicks(): { value: number; label: string }[] {
  return [0, 0.25, 0.5, 0.75, 1].map((v) => ({ value: v, label: v.toString() }));
}

export function renderExpt1(data: Expt1Data): string {
  const makeSeries = (probs: number[][]): Series[] =>
    data.kValues.map((k, i) => ({
      label: `k = ${k}`,
      color: PALETTE[i % PALETTE.length],
      x: data.alphas,
      y: probs[i],
    }));

  const domain: [number, number] = [
    Math.min(...data.alphas),
    Math.max(...data.alphas),
  ];
  const panel = (title: string, probs: number[][]): PanelSpec => ({
    title,
    xLabel: "edge angle α",
    yLabel: "probability of k |1⟩s",
    xTicks: alphaTicks(),
    yTicks: probTicks(),
    xDomain: domain,
    yDomain: [0, 1],
    series: makeSeries(probs),
  });

  const p1 = panel("Two triangles", data.probsG1);
  const p2 = panel("Single 6-cycle", data.probsG2);
  return renderFigure([p1, p2], p1.series);
}
