/* Payload shapes mirrored from the HTTP API.
 *
 * The console renders these verbatim: no field is recomputed client-side,
 * so every interface here describes bytes owned by the server.
 */

export interface GridPayload {
    start_nm: number;
    step_nm: number;
    count: number;
}

export interface MaterialPayload {
    grid: GridPayload;
    values: number[];
}

export interface BankChannelPayload {
    label: string;
    values: number[];
}

export interface BankPayload {
    name: string;
    grid: GridPayload;
    max_weight: number;
    channels: BankChannelPayload[];
}

export interface ParamsPayload {
    delta: number;
    delta_white: number;
    delta_y: number;
    y_tolerance: number;
    starts: number;
    seed: number;
    max_iters: number;
    constraint_tol: number;
    white_target?: [number, number];
    white_target_tol?: number;
}

export interface ProblemPayload {
    mode: string;
    constraint_form?: string;
    materials: { r1: MaterialPayload | string; r2: MaterialPayload | string };
    bank: BankPayload | string;
    matcher?: string;
    params: ParamsPayload;
}

export interface ConstraintRowPayload {
    name: string;
    value: number;
    bound: number;
}

export interface SolutionPayload {
    mode: string;
    constraint_form?: string;
    alpha1: number[];
    alpha2: number[];
    objective: number;
    feasible: boolean;
    constraints: ConstraintRowPayload[];
    seed: number;
}

export interface MetricPayload {
    label: string;
    value: number;
    reference: number | null;
}

export interface ReportPayload {
    mode: string;
    constraint_form?: string;
    metrics: MetricPayload[];
    reference_note: string;
}

export interface SwatchRowPayload {
    material: string;
    under: string;
    srgb: [number, number, number];
    uv: [number, number];
}

export interface FixtureBankEntry {
    file: string;
    name: string;
    channels: number;
    max_weight: number;
}

export interface FixtureMaterialEntry {
    file: string;
    name: string;
}

export interface FixtureProblemEntry {
    name: string;
    file: string;
    mode: string;
    channels: number;
    problem: ProblemPayload;
    constraint_form?: string;
}

export interface FixtureIndex {
    matcher: string;
    banks: FixtureBankEntry[];
    materials: FixtureMaterialEntry[];
    problems: FixtureProblemEntry[];
}

export interface ErrorBody {
    error: { code: string; message: string };
    solution?: SolutionPayload;
}
