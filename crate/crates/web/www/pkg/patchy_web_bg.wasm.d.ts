/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_dispersion_free: (a: number, b: number) => void;
export const __wbg_patternsim_free: (a: number, b: number) => void;
export const dispersion_curve: (a: number, b: number, c: number) => [number, number, number];
export const dispersion_f_e: (a: number) => number;
export const dispersion_growth: (a: number) => [number, number];
export const dispersion_lambda_minus: (a: number) => number;
export const dispersion_lambda_plus: (a: number) => number;
export const dispersion_ode_stable: (a: number) => number;
export const dispersion_turing: (a: number) => number;
export const dispersion_xi2: (a: number) => [number, number];
export const patternsim_advance: (a: number, b: number) => [number, number];
export const patternsim_beta: (a: number) => [number, number];
export const patternsim_gamma: (a: number) => [number, number];
export const patternsim_new: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const patternsim_peak_count: (a: number) => number;
export const patternsim_time: (a: number) => number;
export const turing_map: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
