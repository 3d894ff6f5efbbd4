/** Deterministic synthetic frames for the binding tests. */

import type { BoundImage } from '../src/types.js';

export function synthFrame(id: number, width = 64, height = 48): BoundImage {
  const data = new Uint8Array(width * height * 3);
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const base =
        120 +
        60 * Math.sin((2 * Math.PI * (x * 3 + id * 5)) / width) +
        40 * Math.cos((2 * Math.PI * (y * 2 + id * 3)) / height) +
        ((x + y + id) % 7) * 4;
      const i = 3 * (y * width + x);
      data[i] = clamp(base);
      data[i + 1] = clamp(base * 0.97);
      data[i + 2] = clamp(base * 0.94);
    }
  }
  // a dark block so blurs and fog have an object-like feature to chew on
  for (let y = 18; y < 28; y++) {
    for (let x = 24 + (id % 5); x < 38 + (id % 5); x++) {
      const i = 3 * (y * width + x);
      data[i] = 70;
      data[i + 1] = 72;
      data[i + 2] = 75;
    }
  }
  return { width, height, data };
}

function clamp(v: number): number {
  return Math.max(0, Math.min(255, Math.round(v)));
}

export function sameBytes(a: BoundImage, b: BoundImage): boolean {
  if (a.width !== b.width || a.height !== b.height) return false;
  if (a.data.length !== b.data.length) return false;
  for (let i = 0; i < a.data.length; i++) {
    if (a.data[i] !== b.data[i]) return false;
  }
  return true;
}

/** Run async jobs with a bounded number in flight. */
export async function mapLimited<T, R>(
  items: T[],
  limit: number,
  fn: (item: T) => Promise<R>,
): Promise<R[]> {
  const results: R[] = new Array(items.length);
  let next = 0;
  async function worker() {
    while (next < items.length) {
      const index = next++;
      results[index] = await fn(items[index]);
    }
  }
  await Promise.all(Array.from({ length: Math.min(limit, items.length) }, worker));
  return results;
}
