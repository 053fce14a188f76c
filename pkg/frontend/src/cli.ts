#!/usr/bin/env node
/** plot --kind K --in CSV --out IMG */
import { readFileSync, writeFileSync } from "node:fs";
import { FIGURE_KINDS, FigureKind, render } from "./figures.js";

function parseArgs(argv: string[]): { kind: string; input: string; output: string } {
  const args: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key?.startsWith("--") || value === undefined) {
      throw new Error("usage: plot --kind K --in CSV --out IMG");
    }
    args[key.slice(2)] = value;
  }
  const { kind, in: input, out: output } = args;
  if (!kind || !input || !output) {
    throw new Error("usage: plot --kind K --in CSV --out IMG");
  }
  return { kind, input, output };
}

export function main(argv: string[]): number {
  try {
    const { kind, input, output } = parseArgs(argv);
    if (!(FIGURE_KINDS as readonly string[]).includes(kind)) {
      throw new Error(`unknown figure kind: ${kind}; choose from ${FIGURE_KINDS.join(", ")}`);
    }
    const svg = render(kind as FigureKind, readFileSync(input, "utf-8"));
    writeFileSync(output, svg);
    console.log(output);
    return 0;
  } catch (err) {
    console.error(`plot: error: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
}

process.exit(main(process.argv.slice(2)));
