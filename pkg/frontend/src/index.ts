import { cpus } from "node:os";

import { runBilexChecked } from "./cli.js";
import { parseLexiconFile, Translation } from "./lexicon.js";

export { BilexCliError, runBilex, runBilexChecked } from "./cli.js";
export { LexiconFormatError, parseLexiconFile } from "./lexicon.js";
export type { LexiconData, Translation } from "./lexicon.js";

/** Thrown when a queried word is not in the lexicon. */
export class WordNotFoundError extends Error {
  readonly word: string;

  constructor(word: string) {
    super(`word not found: ${JSON.stringify(word)}`);
    this.word = word;
  }
}

/** Thrown when a handle is used after close(). */
export class HandleClosedError extends Error {
  constructor() {
    super("lexicon handle is closed");
  }
}

export interface BuildOptions {
  srcLang?: string; // default "src"
  tgtLang?: string; // default "tgt"
  method?: "cooc" | "pmi" | "cpe"; // default "cpe"
  k?: number; // default 10
  m?: number; // default 5000
  minCount?: number; // default 1
  threads?: number; // default: machine parallelism
  pretokenized?: boolean;
  lowercase?: boolean;
  maxLen?: number;
}

export interface EvalMetrics {
  [metric: string]: number; // "P@1", "P@5", ..., "coverage", "n", "n_in_lexicon"
}

/**
 * A loaded, immutable lexicon. Queries are pure reads and safe to issue
 * concurrently; after close() every operation throws HandleClosedError.
 */
export class LexiconHandle {
  readonly path: string;
  private data: ReturnType<typeof parseLexiconFile> | null;

  constructor(path: string) {
    this.path = path;
    this.data = parseLexiconFile(path);
  }

  private live() {
    if (this.data === null) {
      throw new HandleClosedError();
    }
    return this.data;
  }

  get srcLang(): string {
    return this.live().srcLang;
  }

  get tgtLang(): string {
    return this.live().tgtLang;
  }

  get method(): string {
    return this.live().method;
  }

  get size(): number {
    return this.live().entries.size;
  }

  /**
   * Top-n translations of word, in stored rank order.
   * Unknown words throw WordNotFoundError (a known word always has at
   * least one translation, so [] never means "not found").
   */
  query(word: string, n = 10): Translation[] {
    if (n < 1) {
      throw new RangeError("n must be >= 1");
    }
    const translations = this.live().entries.get(word);
    if (translations === undefined) {
      throw new WordNotFoundError(word);
    }
    return translations.slice(0, n);
  }

  has(word: string): boolean {
    return this.live().entries.has(word);
  }

  /**
   * Precision@k of this lexicon against a gold dictionary file, via the
   * CLI evaluator. Fractions are reconstructed from the machine summary
   * line as exact integer ratios, so values match the core evaluator to
   * full double precision.
   */
  evaluate(goldPath: string, kValues: number[] = [1, 5]): EvalMetrics {
    this.live();
    const result = runBilexChecked([
      "evaluate",
      this.path,
      goldPath,
      "--k",
      kValues.join(","),
    ]);
    return parseEvalSummary(result.stdout);
  }

  close(): void {
    this.data = null;
  }
}

/** Parse `P@1=<f> ... coverage=<f> n=<int>` into exact metric values. */
export function parseEvalSummary(stdout: string): EvalMetrics {
  const line = stdout.trim().split("\n").pop() ?? "";
  const metrics: EvalMetrics = {};
  const raw: { [key: string]: number } = {};
  for (const part of line.split(" ")) {
    const eq = part.indexOf("=");
    if (eq < 0) {
      throw new Error(`malformed evaluate output: ${JSON.stringify(line)}`);
    }
    raw[part.slice(0, eq)] = Number(part.slice(eq + 1));
  }
  const n = raw["n"];
  if (!Number.isInteger(n) || n < 1) {
    throw new Error(`malformed evaluate output (missing n): ${line}`);
  }
  metrics["n"] = n;
  for (const [key, value] of Object.entries(raw)) {
    if (key === "n") continue;
    // printed with 9 decimals; the underlying value is hits/n with
    // integer hits, so recover the integer and redo the division
    const hits = Math.round(value * n);
    metrics[key] = hits / n;
    if (key === "coverage") {
      metrics["n_in_lexicon"] = hits;
    }
  }
  return metrics;
}

/** Load an existing lexicon file. */
export function load(path: string): LexiconHandle {
  return new LexiconHandle(path);
}

/**
 * Build a lexicon from a line-aligned parallel corpus via the CLI, then
 * load it. Option defaults equal the CLI defaults exactly.
 */
export function build(
  srcFile: string,
  tgtFile: string,
  outFile: string,
  options: BuildOptions = {},
): LexiconHandle {
  const args = [
    "build",
    "--src", srcFile,
    "--tgt", tgtFile,
    "--src-lang", options.srcLang ?? "src",
    "--tgt-lang", options.tgtLang ?? "tgt",
    "--method", options.method ?? "cpe",
    "--k", String(options.k ?? 10),
    "--m", String(options.m ?? 5000),
    "--min-count", String(options.minCount ?? 1),
    "--threads", String(options.threads ?? cpus().length),
    "--out", outFile,
  ];
  if (options.pretokenized) args.push("--pretokenized");
  if (options.lowercase) args.push("--lowercase");
  if (options.maxLen !== undefined) args.push("--max-len", String(options.maxLen));
  runBilexChecked(args);
  return new LexiconHandle(outFile);
}
