/** PlotSpec -> image file on disk (format chosen by output extension). */

import { readFileSync, writeFileSync } from "node:fs";
import { extname } from "node:path";

import { layoutChart } from "./chart.js";
import { parseCsv } from "./csv.js";
import { EnergyAxis, FigureKind, buildFigure } from "./figures.js";
import { toPng } from "./raster.js";
import { toSvg } from "./svg.js";

export interface PlotSpec {
  inputCsv: string;
  figure: FigureKind;
  xAxis: EnergyAxis;
  outputImage: string;
  overlayClassical: boolean;
  overlayTmsv: boolean;
}

export function render(spec: PlotSpec): void {
  const table = parseCsv(readFileSync(spec.inputCsv, "utf8"));
  const model = buildFigure(table, spec.figure, {
    xAxis: spec.xAxis,
    overlayClassical: spec.overlayClassical,
    overlayTmsv: spec.overlayTmsv,
  });
  const cmds = layoutChart(model);
  const ext = extname(spec.outputImage).toLowerCase();
  if (ext === ".svg") {
    writeFileSync(spec.outputImage, toSvg(cmds), "utf8");
  } else if (ext === ".png") {
    writeFileSync(spec.outputImage, toPng(cmds));
  } else {
    throw new Error(`unsupported output extension: ${ext || "(none)"} (use .svg or .png)`);
  }
}
