/* tslint:disable */
/* eslint-disable */

/**
 * Stable fixed components over `legs` with labels in `[-bound, bound]`,
 * each with its curve class, virtual dimension and whether `T^vir` of the
 * BS pair matches that of the quasimap.
 */
export function components(legs: string, bound: number): string;

/**
 * The topological-vertex and mirror series for `legs`, with whether they agree.
 */
export function cy_vertex(legs: string, order: number): string;

/**
 * m-core and m-quotient of the partition `parts`, e.g. `"3,2,1"`.
 */
export function quotient(m: number, parts: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly components: (a: number, b: number, c: number) => [number, number, number, number];
    readonly cy_vertex: (a: number, b: number, c: number) => [number, number, number, number];
    readonly quotient: (a: number, b: number, c: number) => [number, number, number, number];
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
