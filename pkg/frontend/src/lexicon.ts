import { readFileSync } from "node:fs";

/**
 * Reader for lexicon file format v1.
 *
 * Header: #word2word-lexicon\tv1\tsrc=..\ttgt=..\tmethod=..\tm=..\tk=..\tn_pairs=..
 * Records: <source>\t<rank>\t<target>\t<score>, contiguous per source,
 * ranks 1..r without gaps.
 */

const MAGIC = "#word2word-lexicon";
const VERSION = "v1";

export type Translation = [target: string, score: number];

export interface LexiconData {
  srcLang: string;
  tgtLang: string;
  method: string;
  m: number;
  k: number;
  nPairs: number;
  entries: Map<string, Translation[]>;
}

export class LexiconFormatError extends Error {}

function headerValue(field: string, key: string, path: string): string {
  const prefix = `${key}=`;
  if (!field.startsWith(prefix)) {
    throw new LexiconFormatError(
      `${path}: malformed header field ${JSON.stringify(field)}, expected ${key}=...`,
    );
  }
  return field.slice(prefix.length);
}

function headerInt(field: string, key: string, path: string): number {
  const raw = headerValue(field, key, path);
  const value = Number(raw);
  if (!Number.isInteger(value)) {
    throw new LexiconFormatError(`${path}: ${key} is not an integer: ${raw}`);
  }
  return value;
}

export function parseLexiconFile(path: string): LexiconData {
  const text = readFileSync(path, "utf-8");
  const lines = text.split("\n");
  if (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new LexiconFormatError(`${path}: empty file`);
  }
  const header = lines[0].split("\t");
  if (header[0] !== MAGIC) {
    throw new LexiconFormatError(`${path}: not a lexicon file (bad magic line)`);
  }
  if (header.length !== 8 || header[1] !== VERSION) {
    throw new LexiconFormatError(
      `${path}: unsupported lexicon version or malformed header`,
    );
  }
  const data: LexiconData = {
    srcLang: headerValue(header[2], "src", path),
    tgtLang: headerValue(header[3], "tgt", path),
    method: headerValue(header[4], "method", path),
    m: headerInt(header[5], "m", path),
    k: headerInt(header[6], "k", path),
    nPairs: headerInt(header[7], "n_pairs", path),
    entries: new Map(),
  };

  let current: string | null = null;
  let block: Translation[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineno = i + 1;
    const fields = lines[i].split("\t");
    if (fields.length !== 4) {
      throw new LexiconFormatError(
        `${path}:${lineno}: expected 4 fields, got ${fields.length}`,
      );
    }
    const [source, rankRaw, target, scoreRaw] = fields;
    const rank = Number(rankRaw);
    const score = Number(scoreRaw);
    if (!Number.isInteger(rank) || Number.isNaN(score)) {
      throw new LexiconFormatError(`${path}:${lineno}: bad rank or score`);
    }
    if (source !== current) {
      if (data.entries.has(source)) {
        throw new LexiconFormatError(
          `${path}:${lineno}: records for ${JSON.stringify(source)} are not contiguous`,
        );
      }
      if (rank !== 1) {
        throw new LexiconFormatError(
          `${path}:${lineno}: first rank for ${JSON.stringify(source)} is ${rank}, not 1`,
        );
      }
      current = source;
      block = [];
      data.entries.set(source, block);
    } else if (rank !== block.length + 1) {
      throw new LexiconFormatError(
        `${path}:${lineno}: rank ${rank}, expected ${block.length + 1}`,
      );
    }
    if (rank > data.k) {
      throw new LexiconFormatError(
        `${path}:${lineno}: rank ${rank} exceeds k=${data.k}`,
      );
    }
    block.push([target, score]);
  }
  return data;
}
