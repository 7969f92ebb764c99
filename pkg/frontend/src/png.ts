/**
 * Deterministic 8-bit RGB PNG encode/decode on top of node's zlib.  The
 * encoder always writes filter 0 scanlines and a single IDAT chunk, which is
 * all the decoder supports -- enough to verify our own output byte for byte.
 */

import { deflateSync, inflateSync } from "node:zlib";

const SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

const CRC_TABLE: number[] = (() => {
  const table: number[] = [];
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table.push(c >>> 0);
  }
  return table;
})();

function crc32(buf: Buffer): number {
  let c = 0xffffffff;
  for (const byte of buf) {
    c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const head = Buffer.concat([Buffer.from(type, "ascii"), data]);
  const out = Buffer.alloc(8 + data.length + 4);
  out.writeUInt32BE(data.length, 0);
  head.copy(out, 4);
  out.writeUInt32BE(crc32(head), 8 + data.length);
  return out;
}

export interface Image {
  width: number;
  height: number;
  /** RGB, 3 bytes per pixel, row major. */
  pixels: Buffer;
}

export function createImage(width: number, height: number, fill = 255): Image {
  return { width, height, pixels: Buffer.alloc(width * height * 3, fill) };
}

export function setPixel(img: Image, x: number, y: number, rgb: [number, number, number]): void {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) {
    return;
  }
  const off = (y * img.width + x) * 3;
  img.pixels[off] = rgb[0];
  img.pixels[off + 1] = rgb[1];
  img.pixels[off + 2] = rgb[2];
}

export function getPixel(img: Image, x: number, y: number): [number, number, number] {
  const off = (y * img.width + x) * 3;
  return [img.pixels[off], img.pixels[off + 1], img.pixels[off + 2]];
}

export function encodePng(img: Image): Buffer {
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(img.width, 0);
  ihdr.writeUInt32BE(img.height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // RGB
  const stride = img.width * 3;
  const raw = Buffer.alloc((stride + 1) * img.height);
  for (let y = 0; y < img.height; y++) {
    raw[y * (stride + 1)] = 0; // filter 0
    img.pixels.copy(raw, y * (stride + 1) + 1, y * stride, (y + 1) * stride);
  }
  const idat = deflateSync(raw, { level: 9 });
  return Buffer.concat([
    SIGNATURE,
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", Buffer.alloc(0)),
  ]);
}

export function decodePng(buf: Buffer): Image {
  if (!buf.subarray(0, 8).equals(SIGNATURE)) {
    throw new Error("not a PNG");
  }
  let off = 8;
  let width = 0;
  let height = 0;
  const idatParts: Buffer[] = [];
  while (off < buf.length) {
    const len = buf.readUInt32BE(off);
    const type = buf.subarray(off + 4, off + 8).toString("ascii");
    const data = buf.subarray(off + 8, off + 8 + len);
    if (type === "IHDR") {
      width = data.readUInt32BE(0);
      height = data.readUInt32BE(4);
      if (data[8] !== 8 || data[9] !== 2) {
        throw new Error("only 8-bit RGB supported");
      }
    } else if (type === "IDAT") {
      idatParts.push(Buffer.from(data));
    }
    off += 12 + len;
  }
  const raw = inflateSync(Buffer.concat(idatParts));
  const stride = width * 3;
  const pixels = Buffer.alloc(width * height * 3);
  for (let y = 0; y < height; y++) {
    if (raw[y * (stride + 1)] !== 0) {
      throw new Error("only filter 0 scanlines supported");
    }
    raw.copy(pixels, y * stride, y * (stride + 1) + 1, (y + 1) * (stride + 1));
  }
  return { width, height, pixels };
}
