#!/usr/bin/env node
/**
 * Batch front-end: queries.jsonl in, parses.jsonl out.
 *
 *   parse-sidecar parse --in queries.jsonl --out parses.jsonl
 *
 * Reads {"id", "question"} per line and writes one record per input line in
 * the same order. A record that cannot be processed becomes {"id", "error"}
 * without aborting the batch; the exit status is nonzero only for I/O or
 * usage failures.
 */

import * as fs from "fs";

import { parseQuestion } from "./pipeline";
import { ErrorRecord, ParseRecord } from "./types";

function usage(): never {
  process.stderr.write(
    "usage: parse-sidecar parse [--in queries.jsonl] [--out parses.jsonl]\n");
  process.exit(2);
}

function parseArgs(argv: string[]): { input?: string; output?: string } {
  if (argv[0] !== "parse") usage();
  const out: { input?: string; output?: string } = {};
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) usage();
    if (flag === "--in") out.input = value;
    else if (flag === "--out") out.output = value;
    else usage();
  }
  return out;
}

export function processBatch(lines: string[]): (ParseRecord | ErrorRecord)[] {
  const records: (ParseRecord | ErrorRecord)[] = [];
  for (const line of lines) {
    if (!line.trim()) continue;
    let id = "";
    try {
      const obj = JSON.parse(line);
      id = String(obj.id ?? "");
      const question = String(obj.question ?? "");
      if (!id) throw new Error("missing id");
      if (!question.trim()) throw new Error("empty question");
      records.push(parseQuestion(id, question));
    } catch (err) {
      records.push({ id, error: err instanceof Error ? err.message : String(err) });
    }
  }
  return records;
}

function main(): void {
  const args = parseArgs(process.argv.slice(2));
  let text: string;
  try {
    text = fs.readFileSync(args.input ?? 0, "utf-8");
  } catch (err) {
    process.stderr.write(`cannot read input: ${err}\n`);
    process.exit(1);
  }
  const records = processBatch(text.split("\n"));
  const body = records.map((r) => JSON.stringify(r)).join("\n") + "\n";
  try {
    if (args.output) fs.writeFileSync(args.output, body);
    else process.stdout.write(body);
  } catch (err) {
    process.stderr.write(`cannot write output: ${err}\n`);
    process.exit(1);
  }
}

if (require.main === module) {
  main();
}
