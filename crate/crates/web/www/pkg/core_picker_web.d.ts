/* tslint:disable */
/* eslint-disable */

/**
 * Learner on a strictly convex three-player game, advanced in chunks of
 * epochs so the page can animate it.
 */
export class Session {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Six planar vertices per confidence box, boxes concatenated.
     */
    boxes(): Float64Array;
    /**
     * Mean of the estimates; empty before the first epoch.
     */
    candidate(): Float64Array;
    /**
     * The six core vertices ordered around the hexagon, as flat
     * `[x0, y0, x1, y1, …]`.
     */
    core_polygon(): Float64Array;
    epochs(): number;
    /**
     * Current estimates; empty before the first epoch.
     */
    estimates(): Float64Array;
    constructor(seed: bigint, cyclic: boolean);
    radius(): number;
    samples(): number;
    /**
     * Runs up to `epochs` more epochs; returns whether the learner stopped.
     */
    step(epochs: number): boolean;
    stopped(): boolean;
    /**
     * True vertices targeted by the chosen permutations.
     */
    targets(): Float64Array;
    /**
     * Largest core violation of the candidate (≤ 0 means inside).
     */
    violation(): number;
}

/**
 * Counts of `c_W` values in `bins` equal bins over `[0, max)`, followed by
 * the median and the number of trials falling outside.
 */
export function cw_histogram(n: number, trials: number, seed: bigint, bins: number, max: number): Float64Array;

/**
 * `[cyclic, adjacent, n/2, 3/n]` widths of the unnormalized permutahedron.
 */
export function permutahedron_widths(n: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_session_free: (a: number, b: number) => void;
    readonly cw_histogram: (a: number, b: number, c: bigint, d: number, e: number) => [number, number];
    readonly permutahedron_widths: (a: number) => [number, number];
    readonly session_boxes: (a: number) => [number, number];
    readonly session_candidate: (a: number) => [number, number];
    readonly session_core_polygon: (a: number) => [number, number];
    readonly session_epochs: (a: number) => number;
    readonly session_estimates: (a: number) => [number, number];
    readonly session_new: (a: bigint, b: number) => number;
    readonly session_radius: (a: number) => number;
    readonly session_samples: (a: number) => number;
    readonly session_step: (a: number, b: number) => number;
    readonly session_stopped: (a: number) => number;
    readonly session_targets: (a: number) => [number, number];
    readonly session_violation: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
