#!/usr/bin/env node
/** Render the training-metrics CSV as accuracy-vs-depth panels. */

import { parseArgs, readInput, writeOutput } from "./cli.js";
import { parseExpt2, renderExpt2, renderLearningCurves } from "./expt2.js";
import { SchemaError } from "./csv.js";

const USAGE =
  "plot_expt2 <expt2.csv> <out.svg> [--drop-runs depth:seed,...] [--learning-curves METRIC] [--format svg]";

const args = parseArgs(process.argv.slice(2), USAGE);
try {
  const data = parseExpt2(readInput(args.input), args.dropRuns);
  const svg = args.learningCurves
    ? renderLearningCurves(data, args.learningCurves)
    : renderExpt2(data);
  writeOutput(args.output, svg);
} catch (exc) {
  if (exc instanceof SchemaError) {
    process.stderr.write(`error: ${exc.message}\n`);
    process.exit(1);
  }
  throw exc;
}
