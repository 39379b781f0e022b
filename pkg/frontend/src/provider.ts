#!/usr/bin/env node
import { serve } from "./protocol.js";

serve(process.stdin, process.stdout).catch((err: unknown) => {
  process.stderr.write(`provider fatal: ${String(err)}\n`);
  process.exit(1);
});
