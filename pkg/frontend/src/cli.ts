import { spawnSync } from "node:child_process";

/** Resolve the bilex executable; override with BILEX_BIN. */
export function bilexBin(): string {
  return process.env.BILEX_BIN ?? "bilex";
}

export interface CliResult {
  status: number;
  stdout: string;
  stderr: string;
}

export class BilexCliError extends Error {
  readonly status: number;
  readonly stderr: string;

  constructor(args: string[], status: number, stderr: string) {
    super(`bilex ${args[0]} failed (exit ${status}): ${stderr.trim()}`);
    this.status = status;
    this.stderr = stderr;
  }
}

/** Run the bilex CLI and capture its output. */
export function runBilex(args: string[]): CliResult {
  const proc = spawnSync(bilexBin(), args, { encoding: "utf-8" });
  if (proc.error) {
    throw new Error(`cannot spawn ${bilexBin()}: ${proc.error.message}`);
  }
  return {
    status: proc.status ?? -1,
    stdout: proc.stdout ?? "",
    stderr: proc.stderr ?? "",
  };
}

/** Run the CLI, throwing on any nonzero exit. */
export function runBilexChecked(args: string[]): CliResult {
  const result = runBilex(args);
  if (result.status !== 0) {
    throw new BilexCliError(args, result.status, result.stderr);
  }
  return result;
}
