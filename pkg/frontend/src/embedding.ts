/**
 * Deterministic source-text embedding.
 *
 * Character trigrams are feature-hashed into a fixed-size vector with a
 * signed FNV-1a hash, then L2-normalized. No model download, no state:
 * the same text always maps to the same vector, which is what the
 * similarity contract on the consumer side needs (sim(x, x) = 1.0).
 */

export const DIMENSION = 64;

const FNV_OFFSET = 0x811c9dc5;
const FNV_PRIME = 0x01000193;

function fnv1a(text: string): number {
  let hash = FNV_OFFSET;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, FNV_PRIME) >>> 0;
  }
  return hash;
}

export function embed(text: string): number[] {
  const vector = new Array<number>(DIMENSION).fill(0);
  // Normalize whitespace runs so layout-only edits embed identically.
  const cleaned = text.replace(/\s+/g, " ").trim();
  const padded = `^${cleaned}$`;
  for (let i = 0; i + 3 <= padded.length; i++) {
    const hash = fnv1a(padded.slice(i, i + 3));
    const bucket = hash % DIMENSION;
    const sign = (hash >>> 16) & 1 ? 1 : -1;
    vector[bucket] += sign;
  }
  // A constant bias feature keeps even tiny inputs away from the zero
  // vector, so cosine against it is always well defined.
  vector[0] += 1;
  const norm = Math.sqrt(vector.reduce((acc, x) => acc + x * x, 0));
  return vector.map((x) => x / norm);
}
