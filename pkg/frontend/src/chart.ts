/** Figure model -> flat draw commands shared by the SVG and PNG backends. */

import { fmtTick, linearScale, logScale } from "./scales.js";

export interface McPoint {
  x: number;
  y: number; // positive; zero-count estimates are filtered out upstream
  ciLow: number;
  ciHigh: number;
}

export interface Series {
  label: string;
  color: string;
  dash?: boolean;
  line?: { x: number; y: number }[];
  points?: McPoint[];
}

export interface FigureModel {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

export type Cmd =
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill: string }
  | {
      kind: "line";
      x1: number;
      y1: number;
      x2: number;
      y2: number;
      color: string;
      width: number;
      dash?: boolean;
    }
  | {
      kind: "polyline";
      points: [number, number][];
      color: string;
      width: number;
      dash?: boolean;
    }
  | { kind: "circle"; cx: number; cy: number; r: number; color: string }
  | {
      kind: "text";
      x: number;
      y: number;
      text: string;
      color: string;
      size: number;
      anchor: "start" | "middle" | "end";
      rotate?: boolean; // -90 degrees, for the y-axis title
    };

export const WIDTH = 860;
export const HEIGHT = 560;
const ML = 82;
const MR = 26;
const MT = 46;
const MB = 60;

const AXIS = "#333333";
const GRID = "#dddddd";

function collectDomains(fig: FigureModel): {
  xLo: number;
  xHi: number;
  yLo: number;
  yHi: number;
} {
  let xLo = Infinity;
  let xHi = -Infinity;
  let yLo = Infinity;
  let yHi = -Infinity;
  const takeY = (v: number) => {
    if (v > 0 && Number.isFinite(v)) {
      yLo = Math.min(yLo, v);
      yHi = Math.max(yHi, v);
    }
  };
  for (const s of fig.series) {
    for (const p of s.line ?? []) {
      xLo = Math.min(xLo, p.x);
      xHi = Math.max(xHi, p.x);
      takeY(p.y);
    }
    for (const p of s.points ?? []) {
      xLo = Math.min(xLo, p.x);
      xHi = Math.max(xHi, p.x);
      takeY(p.y);
      takeY(p.ciHigh);
      if (p.ciLow > 0) takeY(p.ciLow);
    }
  }
  if (!Number.isFinite(xLo)) {
    xLo = 0;
    xHi = 1;
  }
  if (!Number.isFinite(yLo)) {
    yLo = 1e-3;
    yHi = 1;
  }
  const pad = (xHi - xLo || 1) * 0.04;
  return { xLo: Math.max(0, xLo - pad), xHi: xHi + pad, yLo, yHi };
}

export function layoutChart(fig: FigureModel): Cmd[] {
  const { xLo, xHi, yLo, yHi } = collectDomains(fig);
  const x = linearScale(xLo, xHi, ML, WIDTH - MR);
  const y = logScale(yLo, yHi, HEIGHT - MB, MT); // pixel axis inverted
  const cmds: Cmd[] = [];

  cmds.push({ kind: "rect", x: 0, y: 0, w: WIDTH, h: HEIGHT, fill: "#ffffff" });
  cmds.push({
    kind: "text",
    x: WIDTH / 2,
    y: MT - 18,
    text: fig.title,
    color: AXIS,
    size: 16,
    anchor: "middle",
  });

  for (const t of x.ticks) {
    const px = x.toPixel(t);
    cmds.push({ kind: "line", x1: px, y1: MT, x2: px, y2: HEIGHT - MB, color: GRID, width: 1 });
    cmds.push({
      kind: "text",
      x: px,
      y: HEIGHT - MB + 18,
      text: fmtTick(t),
      color: AXIS,
      size: 12,
      anchor: "middle",
    });
  }
  for (const t of y.ticks) {
    const py = y.toPixel(t);
    cmds.push({ kind: "line", x1: ML, y1: py, x2: WIDTH - MR, y2: py, color: GRID, width: 1 });
    cmds.push({
      kind: "text",
      x: ML - 8,
      y: py + 4,
      text: fmtTick(t),
      color: AXIS,
      size: 12,
      anchor: "end",
    });
  }
  // frame
  cmds.push({ kind: "line", x1: ML, y1: MT, x2: ML, y2: HEIGHT - MB, color: AXIS, width: 1 });
  cmds.push({
    kind: "line",
    x1: ML,
    y1: HEIGHT - MB,
    x2: WIDTH - MR,
    y2: HEIGHT - MB,
    color: AXIS,
    width: 1,
  });
  cmds.push({
    kind: "text",
    x: (ML + WIDTH - MR) / 2,
    y: HEIGHT - 16,
    text: fig.xLabel,
    color: AXIS,
    size: 13,
    anchor: "middle",
  });
  cmds.push({
    kind: "text",
    x: 22,
    y: (MT + HEIGHT - MB) / 2,
    text: fig.yLabel,
    color: AXIS,
    size: 13,
    anchor: "middle",
    rotate: true,
  });

  const clampY = (v: number) => Math.min(Math.max(v, y.min), y.max);
  for (const s of fig.series) {
    if (s.line && s.line.length > 0) {
      const pts: [number, number][] = s.line.map((p) => [
        x.toPixel(p.x),
        y.toPixel(clampY(p.y)),
      ]);
      if (pts.length === 1) {
        const [px, py] = pts[0]!;
        cmds.push({ kind: "circle", cx: px, cy: py, r: 3, color: s.color });
      } else {
        cmds.push({ kind: "polyline", points: pts, color: s.color, width: 2, dash: s.dash });
      }
    }
    for (const p of s.points ?? []) {
      const px = x.toPixel(p.x);
      const py = y.toPixel(clampY(p.y));
      const hi = y.toPixel(clampY(p.ciHigh));
      const lo = y.toPixel(clampY(p.ciLow > 0 ? p.ciLow : y.min));
      cmds.push({ kind: "line", x1: px, y1: lo, x2: px, y2: hi, color: s.color, width: 1 });
      cmds.push({ kind: "line", x1: px - 4, y1: hi, x2: px + 4, y2: hi, color: s.color, width: 1 });
      cmds.push({ kind: "line", x1: px - 4, y1: lo, x2: px + 4, y2: lo, color: s.color, width: 1 });
      cmds.push({ kind: "circle", cx: px, cy: py, r: 3.5, color: s.color });
    }
  }

  // legend, top-right inside the plot area
  const entries = fig.series.filter((s) => (s.line?.length ?? 0) + (s.points?.length ?? 0) > 0);
  if (entries.length > 0) {
    const lh = 20;
    const boxW = 8 + 30 + 8 + Math.max(...entries.map((s) => s.label.length)) * 7.5 + 8;
    const boxH = entries.length * lh + 10;
    const bx = WIDTH - MR - boxW - 8;
    const by = MT + 8;
    cmds.push({ kind: "rect", x: bx, y: by, w: boxW, h: boxH, fill: "#fafafa" });
    entries.forEach((s, i) => {
      const cy = by + 8 + i * lh + 6;
      if (s.line && s.line.length > 0) {
        cmds.push({
          kind: "line",
          x1: bx + 8,
          y1: cy,
          x2: bx + 38,
          y2: cy,
          color: s.color,
          width: 2,
          dash: s.dash,
        });
      } else {
        cmds.push({ kind: "circle", cx: bx + 23, cy, r: 3.5, color: s.color });
      }
      cmds.push({
        kind: "text",
        x: bx + 46,
        y: cy + 4,
        text: s.label,
        color: AXIS,
        size: 12,
        anchor: "start",
      });
    });
  }
  return cmds;
}
