/** Build figure models from sweep CSV tables. */

import { FigureModel, McPoint, Series } from "./chart.js";
import { Table, cellNumber, requireColumns } from "./csv.js";
import { EmptySelectionError } from "./errors.js";

export type FigureKind = "fig1" | "fig2";
export type EnergyAxis = "transmissions" | "photons";

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const CLASSICAL_COLOR = "#555555";
const TMSV_COLOR = "#999999";

export interface FigureOptions {
  xAxis: EnergyAxis;
  overlayClassical: boolean;
  overlayTmsv: boolean;
}

function energyColumn(axis: EnergyAxis): string {
  return axis === "photons" ? "analytic_energy_photons" : "analytic_energy_transmissions";
}

const clamp1 = (v: number) => Math.min(v, 1.0); // bounds above 1 plot as 1

function mcPoints(rows: Record<string, string>[], xCol: string): McPoint[] {
  const points: McPoint[] = [];
  for (const row of rows) {
    const x = cellNumber(row, xCol);
    const y = cellNumber(row, "mc_error");
    if (x === undefined || y === undefined || y <= 0) continue; // log axis: skip zero-count estimates
    points.push({
      x,
      y,
      ciLow: cellNumber(row, "mc_ci_low") ?? 0,
      ciHigh: clamp1(cellNumber(row, "mc_ci_high") ?? y),
    });
  }
  return points;
}

function lineOf(
  rows: Record<string, string>[],
  xCol: string,
  yCol: string,
): { x: number; y: number }[] {
  const pts: { x: number; y: number }[] = [];
  for (const row of rows) {
    const x = cellNumber(row, xCol);
    const y = cellNumber(row, yCol);
    if (x === undefined || y === undefined) continue;
    pts.push({ x, y: clamp1(y) });
  }
  pts.sort((a, b) => a.x - b.x);
  return pts;
}

function overlays(
  rows: Record<string, string>[],
  xCol: string,
  options: FigureOptions,
): Series[] {
  const out: Series[] = [];
  if (options.overlayClassical) {
    out.push({
      label: "classical floor",
      color: CLASSICAL_COLOR,
      dash: true,
      line: lineOf(rows, xCol, "analytic_classical_lb"),
    });
  }
  if (options.overlayTmsv) {
    out.push({
      label: "TMSV ceiling",
      color: TMSV_COLOR,
      dash: true,
      line: lineOf(rows, xCol, "analytic_tmsv_ub"),
    });
  }
  return out;
}

export function buildFig1(table: Table, options: FigureOptions): FigureModel {
  const xCol = energyColumn(options.xAxis);
  requireColumns(table, ["rule", "m", xCol, "analytic_error", "mc_error"]);
  if (options.overlayClassical) requireColumns(table, ["analytic_classical_lb"]);
  if (options.overlayTmsv) requireColumns(table, ["analytic_tmsv_ub"]);
  const rows = table.rows.filter(
    (row) => row["rule"] === "truncated_first_click" && row["m"] === "inf",
  );
  if (rows.length === 0) {
    throw new EmptySelectionError("fig1", 'rule="truncated_first_click", m="inf"');
  }
  const series: Series[] = [
    {
      label: "budgeted first click",
      color: PALETTE[0]!,
      line: lineOf(rows, xCol, "analytic_error"),
      points: mcPoints(rows, xCol),
    },
    ...overlays(rows, xCol, options),
  ];
  return {
    title: `error probability vs ${options.xAxis} (noise-free false positives)`,
    xLabel: `mean ${options.xAxis} spent`,
    yLabel: "error probability",
    series,
  };
}

export function buildFig2(table: Table, options: FigureOptions): FigureModel {
  const xCol = energyColumn(options.xAxis);
  requireColumns(table, ["rule", "m", xCol, "analytic_error", "mc_error"]);
  const rows = table.rows.filter(
    (row) =>
      (row["rule"] === "r_clicks" || row["rule"] === "first_click") && row["m"] !== "inf",
  );
  if (rows.length === 0) {
    throw new EmptySelectionError("fig2", 'rule="r_clicks"/"first_click", finite m');
  }
  const byM = new Map<number, Record<string, string>[]>();
  for (const row of rows) {
    const m = Number(row["m"]);
    if (!byM.has(m)) byM.set(m, []);
    byM.get(m)!.push(row);
  }
  const series: Series[] = [];
  const ms = [...byM.keys()].sort((a, b) => a - b);
  ms.forEach((m, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const group = byM.get(m)!;
    series.push({
      label: `m=${m} bound`,
      color,
      line: lineOf(group, xCol, "analytic_error"),
    });
    const points = mcPoints(group, xCol);
    if (points.length > 0) {
      series.push({ label: `m=${m} MC`, color, points });
    }
  });
  series.push(...overlays(rows, xCol, options));
  return {
    title: `r-click race: error probability vs ${options.xAxis}`,
    xLabel: `mean ${options.xAxis} spent`,
    yLabel: "error probability",
    series,
  };
}

export function buildFigure(
  table: Table,
  figure: FigureKind,
  options: FigureOptions,
): FigureModel {
  return figure === "fig1" ? buildFig1(table, options) : buildFig2(table, options);
}
