/* tslint:disable */
/* eslint-disable */

/**
 * `{"family", "s": [text], "p": [text]}` for degrees `0..=degree`.
 */
export function expand_table(family: string, degree: number): string;

/**
 * The stored entries of the `S` or `P` matrix. Each cell carries its
 * symbolic text; with `point` set, every digit variable is evaluated there
 * and the cell also gets `"value"` (exact) and `"approx"` (float).
 */
export function sierpinski_matrix(kind: string, family: string, base: number, levels: number, point?: string | null): string;

/**
 * Runs one identity check and returns its canonical report.
 * `identity` is `digital`, `power`, `bernoulli-power` or `crosscheck`;
 * `n` is the index for `digital`/`crosscheck` and the level count otherwise.
 */
export function verify_identity(identity: string, family: string, base: number, n: number, binomial: boolean, tamper: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly expand_table: (a: number, b: number, c: number) => [number, number, number, number];
    readonly sierpinski_matrix: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly verify_identity: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
