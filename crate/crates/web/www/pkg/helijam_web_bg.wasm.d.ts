/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const demo_arcLength: (a: number) => number;
export const demo_fingerSweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const demo_tensionProfile: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_voltageCurve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_wrapExponent: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
