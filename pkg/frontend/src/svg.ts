/** Draw commands -> standalone SVG text (no timestamps, fully deterministic). */

import { Cmd, HEIGHT, WIDTH } from "./chart.js";

const FONT = "Helvetica, Arial, sans-serif";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function n(value: number): string {
  return String(Number(value.toFixed(2)));
}

export function toSvg(cmds: Cmd[]): string {
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
  ];
  for (const cmd of cmds) {
    switch (cmd.kind) {
      case "rect":
        parts.push(
          `<rect x="${n(cmd.x)}" y="${n(cmd.y)}" width="${n(cmd.w)}" height="${n(cmd.h)}" fill="${cmd.fill}"/>`,
        );
        break;
      case "line": {
        const dash = cmd.dash ? ' stroke-dasharray="6 4"' : "";
        parts.push(
          `<line x1="${n(cmd.x1)}" y1="${n(cmd.y1)}" x2="${n(cmd.x2)}" y2="${n(cmd.y2)}" stroke="${cmd.color}" stroke-width="${cmd.width}"${dash}/>`,
        );
        break;
      }
      case "polyline": {
        const dash = cmd.dash ? ' stroke-dasharray="6 4"' : "";
        const pts = cmd.points.map(([x, y]) => `${n(x)},${n(y)}`).join(" ");
        parts.push(
          `<polyline points="${pts}" fill="none" stroke="${cmd.color}" stroke-width="${cmd.width}"${dash}/>`,
        );
        break;
      }
      case "circle":
        parts.push(
          `<circle cx="${n(cmd.cx)}" cy="${n(cmd.cy)}" r="${n(cmd.r)}" fill="${cmd.color}"/>`,
        );
        break;
      case "text": {
        const transform = cmd.rotate
          ? ` transform="rotate(-90 ${n(cmd.x)} ${n(cmd.y)})"`
          : "";
        parts.push(
          `<text x="${n(cmd.x)}" y="${n(cmd.y)}" font-family="${FONT}" font-size="${cmd.size}" fill="${cmd.color}" text-anchor="${cmd.anchor}"${transform}>${esc(cmd.text)}</text>`,
        );
        break;
      }
    }
  }
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
