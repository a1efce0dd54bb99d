/** Shared argument handling for the two plot scripts. */

import { readFileSync, writeFileSync } from "node:fs";

import { RunKey } from "./expt2.js";

export interface PlotArgs {
  input: string;
  output: string;
  format: "svg";
  dropRuns: RunKey[];
  learningCurves: string | null;
}

export function parseArgs(argv: string[], usage: string): PlotArgs {
  const positional: string[] = [];
  let format = "svg";
  const dropRuns: RunKey[] = [];
  let learningCurves: string | null = null;

  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--format") {
      format = argv[++i] ?? "";
    } else if (arg === "--drop-runs") {
      const spec = argv[++i] ?? "";
      for (const part of spec.split(",").filter(Boolean)) {
        const m = /^(\d+):(\d+)$/.exec(part);
        if (!m) {
          fail(`bad --drop-runs entry '${part}' (expected depth:seed)`, usage);
        }
        dropRuns.push({ depth: Number(m![1]), seed: Number(m![2]) });
      }
    } else if (arg === "--learning-curves") {
      learningCurves = argv[++i] ?? "train_ss";
    } else if (arg.startsWith("--")) {
      fail(`unknown flag '${arg}'`, usage);
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2) {
    fail("expected exactly: <input.csv> <output-image>", usage);
  }
  if (format === "png") {
    fail(
      "png output needs a rasterizer this build does not ship; use --format svg",
      usage,
    );
  }
  if (format !== "svg") {
    fail(`unknown format '${format}' (supported: svg)`, usage);
  }
  return {
    input: positional[0],
    output: positional[1],
    format: "svg",
    dropRuns,
    learningCurves,
  };
}

function fail(message: string, usage: string): never {
  process.stderr.write(`error: ${message}\nusage: ${usage}\n`);
  process.exit(2);
}

export function readInput(path: string): string {
  try {
    return readFileSync(path, "utf8");
  } catch (exc) {
    process.stderr.write(`error: cannot read ${path}: ${String(exc)}\n`);
    process.exit(1);
  }
}

export function writeOutput(path: string, content: string): void {
  try {
    writeFileSync(path, content);
  } catch (exc) {
    process.stderr.write(`error: cannot write ${path}: ${String(exc)}\n`);
    process.exit(1);
  }
}
