/** Shared framed panel: axes, ticks, labels, and data-space plotting. */

import { SvgCanvas, fmt } from "./svg.js";
import { Scale, linearScale, ticks } from "./scale.js";

export interface Panel {
  readonly sx: Scale;
  readonly sy: Scale;
  curve(xs: number[], ys: number[], stroke: string, width?: number, opacity?: number): void;
  bars(xs: number[], ys: number[], fill: string): void;
}

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export function drawPanel(
  svg: SvgCanvas,
  box: PanelBox,
  xDomain: [number, number],
  yDomain: [number, number],
  title: string,
  xLabel: string,
  yLabel: string,
): Panel {
  const inner = { left: box.x + 46, right: box.x + box.width - 8, top: box.y + 22, bottom: box.y + box.height - 30 };
  const sx = linearScale(xDomain, [inner.left, inner.right]);
  const sy = linearScale(yDomain, [inner.bottom, inner.top]);

  svg.raw(`<g stroke="#cccccc" stroke-width="0.5">`);
  for (const t of ticks(xDomain)) {
    svg.line(sx(t), inner.top, sx(t), inner.bottom, "#dddddd", 0.5);
  }
  for (const t of ticks(yDomain)) {
    svg.line(inner.left, sy(t), inner.right, sy(t), "#dddddd", 0.5);
  }
  svg.raw("</g>");

  svg.line(inner.left, inner.bottom, inner.right, inner.bottom, "#333333");
  svg.line(inner.left, inner.top, inner.left, inner.bottom, "#333333");
  for (const t of ticks(xDomain)) {
    svg.text(sx(t), inner.bottom + 14, fmt(t), 9, "middle");
  }
  for (const t of ticks(yDomain)) {
    svg.text(inner.left - 4, sy(t) + 3, fmt(t), 9, "end");
  }
  svg.text(box.x + box.width / 2, box.y + 14, title, 11, "middle");
  svg.text(box.x + box.width / 2, box.y + box.height - 6, xLabel, 10, "middle");
  svg.raw(
    `<text x="${fmt(box.x + 12)}" y="${fmt(box.y + box.height / 2)}" font-family="sans-serif" font-size="10" text-anchor="middle" transform="rotate(-90 ${fmt(box.x + 12)} ${fmt(box.y + box.height / 2)})">${yLabel}</text>`,
  );

  const clampY = (v: number) => Math.max(inner.top, Math.min(inner.bottom, v));
  const inDomain = (x: number) => x >= xDomain[0] && x <= xDomain[1];
  return {
    sx,
    sy,
    curve(xs, ys, stroke, width = 1.3, opacity = 1) {
      const pts: Array<[number, number]> = [];
      for (let i = 0; i < xs.length; i++) {
        if (inDomain(xs[i]!)) {
          pts.push([sx(xs[i]!), clampY(sy(ys[i]!))]);
        }
      }
      if (pts.length >= 2) {
        svg.polyline(pts, stroke, width, opacity);
      }
    },
    bars(xs, ys, fill) {
      const w = xs.length > 1 ? (sx(xs[1]!) - sx(xs[0]!)) : 2;
      for (let i = 0; i < xs.length; i++) {
        const y = clampY(sy(ys[i]!));
        if (ys[i]! > 0 && inDomain(xs[i]!)) {
          svg.rect(sx(xs[i]!) - w / 2, y, w, inner.bottom - y, fill, ` fill-opacity="0.45"`);
        }
      }
    },
  };
}
