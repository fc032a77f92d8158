/* tslint:disable */
/* eslint-disable */

export class Dispersion {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    growth(): Float64Array;
    xi2(): Float64Array;
    readonly f_e: number;
    /**
     * NaN when the band is empty.
     */
    readonly lambda_minus: number;
    readonly lambda_plus: number;
    readonly ode_stable: boolean;
    readonly turing: boolean;
}

/**
 * Live simulation from the reference bacterial spot.
 */
export class PatternSim {
    free(): void;
    [Symbol.dispose](): void;
    advance(steps: number): void;
    /**
     * Bacteria as a fraction of carrying capacity.
     */
    beta(): Float64Array;
    /**
     * Phagocytes in units of carrying capacity.
     */
    gamma(): Float64Array;
    constructor(r_c: number, a: number, delta: number, n_points: number, dt: number);
    peak_count(): number;
    /**
     * Minutes since the start.
     */
    readonly time: number;
}

export function dispersion_curve(r_c: number, a: number, delta: number): Dispersion;

/**
 * Row-major verdict codes (2 Turing, 1 stable only, 0 ODE-unstable, −1 infeasible),
 * rows along `r_c`, columns along `a`.
 */
export function turing_map(r_c_min: number, r_c_max: number, a_min: number, a_max: number, n_rc: number, n_a: number): Int8Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_dispersion_free: (a: number, b: number) => void;
    readonly __wbg_patternsim_free: (a: number, b: number) => void;
    readonly dispersion_curve: (a: number, b: number, c: number) => [number, number, number];
    readonly dispersion_f_e: (a: number) => number;
    readonly dispersion_growth: (a: number) => [number, number];
    readonly dispersion_lambda_minus: (a: number) => number;
    readonly dispersion_lambda_plus: (a: number) => number;
    readonly dispersion_ode_stable: (a: number) => number;
    readonly dispersion_turing: (a: number) => number;
    readonly dispersion_xi2: (a: number) => [number, number];
    readonly patternsim_advance: (a: number, b: number) => [number, number];
    readonly patternsim_beta: (a: number) => [number, number];
    readonly patternsim_gamma: (a: number) => [number, number];
    readonly patternsim_new: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly patternsim_peak_count: (a: number) => number;
    readonly patternsim_time: (a: number) => number;
    readonly turing_map: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
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
