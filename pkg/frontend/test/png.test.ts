import { execFile } from 'node:child_process';
import { mkdtemp, readFile, rm } from 'node:fs/promises';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { promisify } from 'node:util';

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { decodePng, encodePng } from '../src/png.js';
import { sameBytes, synthFrame } from './helpers.js';

const execFileAsync = promisify(execFile);

describe('png codec', () => {
  it('round-trips a synthetic frame byte for byte', () => {
    const frame = synthFrame(1);
    const again = decodePng(encodePng(frame));
    expect(sameBytes(frame, again)).toBe(true);
  });

  it('rejects malformed buffers', () => {
    expect(() => encodePng({ width: 4, height: 4, data: new Uint8Array(5) })).toThrow(
      /expected 48/,
    );
  });

  describe('engine-written files', () => {
    let dir: string;

    beforeAll(async () => {
      dir = await mkdtemp(join(tmpdir(), 'skyblight-png-'));
      // the engine writes PNGs through Pillow with adaptive row filters;
      // decode must handle those, not just our own filter choices
      const script = [
        'import numpy as np',
        'from PIL import Image',
        'h, w = 33, 47',
        'yy, xx = np.mgrid[0:h, 0:w]',
        'r = (xx * 5) % 256',
        'g = (yy * 7) % 256',
        'b = (xx + yy) % 256',
        'arr = np.stack([r, g, b], axis=-1).astype(np.uint8)',
        `Image.fromarray(arr, 'RGB').save(r'${'PLACEHOLDER'}', compress_level=6)`,
      ];
      const target = join(dir, 'pil.png');
      await execFileAsync('python3', [
        '-c',
        script.join('\n').replace('PLACEHOLDER', target),
      ]);
    });

    afterAll(async () => {
      await rm(dir, { recursive: true, force: true });
    });

    it('decodes a Pillow-written PNG to the expected pixels', async () => {
      const img = decodePng(await readFile(join(dir, 'pil.png')));
      expect(img.width).toBe(47);
      expect(img.height).toBe(33);
      const px = (x: number, y: number) => [
        img.data[3 * (y * img.width + x)],
        img.data[3 * (y * img.width + x) + 1],
        img.data[3 * (y * img.width + x) + 2],
      ];
      expect(px(0, 0)).toEqual([0, 0, 0]);
      expect(px(3, 2)).toEqual([15, 14, 5]);
      expect(px(46, 32)).toEqual([(46 * 5) % 256, (32 * 7) % 256, 78]);
    });
  });
});
