/** Linear and log10 axis scales with deterministic tick generation. */

export interface Scale {
  toPixel(value: number): number;
  ticks: number[];
  min: number;
  max: number;
}

export function fmtTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 0.01 && abs < 100000) {
    const s = value.toPrecision(6);
    return String(Number(s));
  }
  const exp = Math.floor(Math.log10(abs));
  const mant = value / 10 ** exp;
  const m = Number(mant.toPrecision(3));
  return m === 1 ? `1e${exp}` : `${m}e${exp}`;
}

export function linearScale(
  lo: number,
  hi: number,
  pixelLo: number,
  pixelHi: number,
): Scale {
  if (!(hi > lo)) hi = lo + 1;
  const span = hi - lo;
  const rawStep = span / 6;
  const magnitude = 10 ** Math.floor(Math.log10(rawStep));
  const residual = rawStep / magnitude;
  const step = (residual >= 5 ? 5 : residual >= 2 ? 2 : 1) * magnitude;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push(Number(t.toPrecision(12)));
  }
  return {
    toPixel: (v) => pixelLo + ((v - lo) / span) * (pixelHi - pixelLo),
    ticks,
    min: lo,
    max: hi,
  };
}

/** Decade log scale over [10^floor(log min), 10^ceil(log max)]. */
export function logScale(
  minPositive: number,
  maxPositive: number,
  pixelLo: number,
  pixelHi: number,
): Scale {
  let loExp = Math.floor(Math.log10(minPositive));
  let hiExp = Math.ceil(Math.log10(maxPositive));
  if (hiExp <= loExp) hiExp = loExp + 1;
  const ticks: number[] = [];
  for (let e = loExp; e <= hiExp; e++) ticks.push(10 ** e);
  const span = hiExp - loExp;
  return {
    toPixel: (v) => pixelLo + ((Math.log10(v) - loExp) / span) * (pixelHi - pixelLo),
    ticks,
    min: 10 ** loExp,
    max: 10 ** hiExp,
  };
}
