/* tslint:disable */
/* eslint-disable */

/**
 * Mechanism built from slider values in display units.
 */
export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    arcLength(): number;
    fingerSweep(voltage: number, load_max: number, n: number): Float64Array;
    constructor(radius_mm: number, pitch_mm: number, angle_deg: number, film_um: number, eps_r: number, width_mm: number, mu: number);
    tensionProfile(voltage: number, preload: number, n: number): Float64Array;
    voltageCurve(preload: number, v_max: number, n: number): Float64Array;
    wrapExponent(): number;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly demo_arcLength: (a: number) => number;
    readonly demo_fingerSweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly demo_tensionProfile: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_voltageCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly demo_wrapExponent: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
