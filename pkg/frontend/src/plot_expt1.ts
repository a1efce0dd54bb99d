#!/usr/bin/env node
/** Render the one-parameter experiment CSV as the two probability panels. */

import { parseArgs, readInput, writeOutput } from "./cli.js";
import { parseExpt1, renderExpt1 } from "./expt1.js";
import { SchemaError } from "./csv.js";

const USAGE = "plot_expt1 <expt1.csv> <out.svg> [--format svg]";

const args = parseArgs(process.argv.slice(2), USAGE);
try {
  writeOutput(args.output, renderExpt1(parseExpt1(readInput(args.input))));
} catch (exc) {
  if (exc instanceof SchemaError) {
    process.stderr.write(`error: ${exc.message}\n`);
    process.exit(1);
  }
  throw exc;
}
