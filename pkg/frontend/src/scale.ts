/** Linear axis scales with round tick positions. */

export interface Scale {
  (v: number): number;
  readonly domain: [number, number];
  readonly range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const f = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  Object.defineProperty(f, "domain", { value: domain });
  Object.defineProperty(f, "range", { value: range });
  return f;
}

export function extent(values: Iterable<number>): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(lo <= hi)) throw new Error("extent of empty data");
  return lo === hi ? [lo - 1, hi + 1] : [lo, hi];
}

/** spread-free max/min; Math.max(...big) overflows the call stack */
export function maxOf(...arrays: number[][]): number {
  let hi = -Infinity;
  for (const arr of arrays) {
    for (const v of arr) {
      if (v > hi) hi = v;
    }
  }
  return hi;
}

export function minOf(...arrays: number[][]): number {
  let lo = Infinity;
  for (const arr of arrays) {
    for (const v of arr) {
      if (v < lo) lo = v;
    }
  }
  return lo;
}

export function padded(e: [number, number], frac = 0.05): [number, number] {
  const pad = (e[1] - e[0]) * frac;
  return [e[0] - pad, e[1] + pad];
}

export function ticks(domain: [number, number], count = 5): number[] {
  const span = domain[1] - domain[0];
  if (span <= 0) return [domain[0]];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const err = (span / count) / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = step * mult;
  const start = Math.ceil(domain[0] / s) * s;
  const out: number[] = [];
  for (let v = start; v <= domain[1] + s * 1e-9; v += s) {
    out.push(Math.abs(v) < s * 1e-9 ? 0 : v);
  }
  return out;
}
