/* tslint:disable */
/* eslint-disable */

/**
 * Invariants of a closed formula (`conj1`, `conj2`, `conj3` or `gn`) on a
 * shipped lattice, one row per degree.
 */
export function closed_table(lattice: string, l: string, c1: string, formula: string, max_vd: number): string;

/**
 * Localizes the seven reference tuples to q-order `order`, extracts
 * `C1..C6` and compares them with the closed product formulas.
 */
export function localized_c(order: number): string;

/**
 * `1/f`, `log f`, `exp f` or `f^p` of `f = c0 + c1 x + ...` known mod
 * `x^{len}`; coefficients are comma-separated rationals.
 */
export function series_op(coeffs: string, op: string, arg: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly closed_table: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number) => [number, number, number, number];
    readonly localized_c: (a: number) => [number, number, number, number];
    readonly series_op: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
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
