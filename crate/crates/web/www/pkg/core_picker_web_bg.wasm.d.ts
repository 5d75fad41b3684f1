/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_session_free: (a: number, b: number) => void;
export const cw_histogram: (a: number, b: number, c: bigint, d: number, e: number) => [number, number];
export const permutahedron_widths: (a: number) => [number, number];
export const session_boxes: (a: number) => [number, number];
export const session_candidate: (a: number) => [number, number];
export const session_core_polygon: (a: number) => [number, number];
export const session_epochs: (a: number) => number;
export const session_estimates: (a: number) => [number, number];
export const session_new: (a: bigint, b: number) => number;
export const session_radius: (a: number) => number;
export const session_samples: (a: number) => number;
export const session_step: (a: number, b: number) => number;
export const session_stopped: (a: number) => number;
export const session_targets: (a: number) => [number, number];
export const session_violation: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
