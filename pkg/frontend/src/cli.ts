#!/usr/bin/env node
/** CLI: render --csv <path> --figure fig1|fig2 --out <path>
 *        [--x transmissions|photons] [--overlay-classical] [--overlay-tmsv] */

import { PlotSpec, render } from "./render.js";

const USAGE =
  "usage: render --csv <path> --figure {fig1,fig2} --out <path> " +
  "[--x {transmissions,photons}] [--overlay-classical] [--overlay-tmsv]";

export function parseArgs(argv: string[]): PlotSpec {
  if (argv[0] !== "render") {
    throw new Error(`unknown command: ${argv[0] ?? "(none)"}\n${USAGE}`);
  }
  let csv: string | undefined;
  let figure: string | undefined;
  let out: string | undefined;
  let x = "photons";
  let overlayClassical = false;
  let overlayTmsv = false;
  for (let i = 1; i < argv.length; i++) {
    const arg = argv[i]!;
    const next = () => {
      const value = argv[++i];
      if (value === undefined) throw new Error(`${arg} requires a value\n${USAGE}`);
      return value;
    };
    switch (arg) {
      case "--csv":
        csv = next();
        break;
      case "--figure":
        figure = next();
        break;
      case "--out":
        out = next();
        break;
      case "--x":
        x = next();
        break;
      case "--overlay-classical":
        overlayClassical = true;
        break;
      case "--overlay-tmsv":
        overlayTmsv = true;
        break;
      default:
        throw new Error(`unknown argument: ${arg}\n${USAGE}`);
    }
  }
  if (!csv || !figure || !out) throw new Error(`--csv, --figure and --out are required\n${USAGE}`);
  if (figure !== "fig1" && figure !== "fig2") {
    throw new Error(`--figure must be fig1 or fig2, got ${figure}`);
  }
  if (x !== "transmissions" && x !== "photons") {
    throw new Error(`--x must be transmissions or photons, got ${x}`);
  }
  return {
    inputCsv: csv,
    figure,
    xAxis: x,
    outputImage: out,
    overlayClassical,
    overlayTmsv,
  };
}

export function main(argv: string[]): number {
  try {
    const spec = parseArgs(argv);
    render(spec);
    console.log(`wrote ${spec.outputImage}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
