/** Software rasterizer for the draw commands; feeds the PNG writer. */

import { Cmd, HEIGHT, WIDTH } from "./chart.js";
import { GLYPH_HEIGHT, GLYPH_WIDTH, glyph } from "./font5x7.js";
import { encodePng } from "./png.js";

type Rgb = [number, number, number];

function parseColor(hex: string): Rgb {
  const h = hex.replace("#", "");
  return [
    parseInt(h.slice(0, 2), 16),
    parseInt(h.slice(2, 4), 16),
    parseInt(h.slice(4, 6), 16),
  ];
}

class Canvas {
  readonly data: Uint8Array;

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, [r, g, b]: Rgb): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const i = (yi * this.width + xi) * 4;
    this.data[i] = r;
    this.data[i + 1] = g;
    this.data[i + 2] = b;
    this.data[i + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    for (let yy = Math.round(y); yy < Math.round(y + h); yy++) {
      for (let xx = Math.round(x); xx < Math.round(x + w); xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  disc(cx: number, cy: number, r: number, color: Rgb): void {
    for (let yy = Math.floor(cy - r); yy <= Math.ceil(cy + r); yy++) {
      for (let xx = Math.floor(cx - r); xx <= Math.ceil(cx + r); xx++) {
        if ((xx - cx) ** 2 + (yy - cy) ** 2 <= r * r) this.set(xx, yy, color);
      }
    }
  }

  line(
    x1: number,
    y1: number,
    x2: number,
    y2: number,
    color: Rgb,
    width: number,
    dash: boolean,
  ): void {
    const dx = x2 - x1;
    const dy = y2 - y1;
    const steps = Math.max(Math.abs(dx), Math.abs(dy), 1);
    const thick = width >= 2;
    for (let i = 0; i <= steps; i++) {
      if (dash && i % 10 >= 6) continue; // 6 px on, 4 px off
      const x = x1 + (dx * i) / steps;
      const y = y1 + (dy * i) / steps;
      this.set(x, y, color);
      if (thick) {
        // thicken perpendicular to the dominant direction
        if (Math.abs(dx) >= Math.abs(dy)) this.set(x, y + 1, color);
        else this.set(x + 1, y, color);
      }
    }
  }

  text(
    x: number,
    y: number,
    content: string,
    color: Rgb,
    size: number,
    anchor: "start" | "middle" | "end",
    rotate: boolean,
  ): void {
    const scale = size >= 15 ? 2 : 1;
    const advance = (GLYPH_WIDTH + 1) * scale;
    const textWidth = content.length * advance - scale;
    let shift = 0;
    if (anchor === "middle") shift = -textWidth / 2;
    if (anchor === "end") shift = -textWidth;
    // (dx, dy) measured along the baseline and upward from it
    const put = (dx: number, dy: number) => {
      if (rotate) this.set(x + dy, y - dx, color);
      else this.set(x + dx, y + dy, color);
    };
    for (let c = 0; c < content.length; c++) {
      const columns = glyph(content[c]!);
      for (let gx = 0; gx < GLYPH_WIDTH; gx++) {
        const bits = columns[gx]!;
        for (let gy = 0; gy < GLYPH_HEIGHT; gy++) {
          if (!(bits & (1 << gy))) continue;
          for (let sx = 0; sx < scale; sx++) {
            for (let sy = 0; sy < scale; sy++) {
              put(
                shift + c * advance + gx * scale + sx,
                (gy - GLYPH_HEIGHT + 1) * scale + sy,
              );
            }
          }
        }
      }
    }
  }
}

export function toPng(cmds: Cmd[]): Buffer {
  const canvas = new Canvas(WIDTH, HEIGHT);
  for (const cmd of cmds) {
    switch (cmd.kind) {
      case "rect":
        canvas.fillRect(cmd.x, cmd.y, cmd.w, cmd.h, parseColor(cmd.fill));
        break;
      case "line":
        canvas.line(
          cmd.x1,
          cmd.y1,
          cmd.x2,
          cmd.y2,
          parseColor(cmd.color),
          cmd.width,
          cmd.dash ?? false,
        );
        break;
      case "polyline": {
        const color = parseColor(cmd.color);
        for (let i = 1; i < cmd.points.length; i++) {
          const [x1, y1] = cmd.points[i - 1]!;
          const [x2, y2] = cmd.points[i]!;
          canvas.line(x1, y1, x2, y2, color, cmd.width, cmd.dash ?? false);
        }
        break;
      }
      case "circle":
        canvas.disc(cmd.cx, cmd.cy, cmd.r, parseColor(cmd.color));
        break;
      case "text":
        canvas.text(
          cmd.x,
          cmd.y,
          cmd.text,
          parseColor(cmd.color),
          cmd.size,
          cmd.anchor,
          cmd.rotate ?? false,
        );
        break;
    }
  }
  return encodePng(WIDTH, HEIGHT, canvas.data);
}
