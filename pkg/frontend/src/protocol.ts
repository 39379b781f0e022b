/**
 * Wire protocol: one JSON object per line on stdin, one per line on
 * stdout, answered strictly in request order.
 *
 * Request:  {"id": "<string>", "text": "<source>"}
 * Response: {"id": "<string>", "vector": [<reals>]}
 *           {"id": "<string>", "error": "<message>"}
 */

import readline from "node:readline";

import { embed } from "./embedding.js";

export interface EmbedRequest {
  id: string;
  text: string;
}

export type EmbedResponse =
  | { id: string; vector: number[] }
  | { id: string; error: string };

export function handleLine(line: string): EmbedResponse | null {
  const trimmed = line.trim();
  if (!trimmed) {
    return null;
  }
  let parsed: unknown;
  try {
    parsed = JSON.parse(trimmed);
  } catch {
    return { id: "", error: "request is not valid JSON" };
  }
  const request = parsed as Partial<EmbedRequest>;
  const id = typeof request.id === "string" ? request.id : "";
  if (typeof request.id !== "string" || typeof request.text !== "string") {
    return { id, error: "request must have string `id` and `text` fields" };
  }
  if (request.text.length === 0) {
    return { id, error: "cannot embed empty text" };
  }
  return { id, vector: embed(request.text) };
}

export async function serve(
  input: NodeJS.ReadableStream,
  output: NodeJS.WritableStream,
): Promise<void> {
  const rl = readline.createInterface({ input, crlfDelay: Number.POSITIVE_INFINITY });
  for await (const line of rl) {
    const response = handleLine(String(line));
    if (response !== null) {
      output.write(`${JSON.stringify(response)}\n`);
    }
  }
}
