// Typed client for the qbakit HTTP service. All QBA arithmetic happens
// server-side; this module only validates and transports documents.

import { z } from 'zod';

const estimateSchema = z.object({
  odds_ratio: z.number(),
  log_or: z.number(),
  se_log_or: z.number(),
  ci_lower: z.number(),
  ci_upper: z.number(),
  variance_method: z.string(),
});

const diagnosticSchema = z.object({
  arm: z.string(),
  numerator: z.number(),
  denominator: z.number(),
  corrected_positive: z.number().nullable(),
  offending_cell: z.string(),
  reason: z.string(),
});

const correctionSchema = z.discriminatedUnion('kind', [
  z.object({
    kind: z.literal('corrected'),
    A: z.number(),
    B: z.number(),
    C: z.number(),
    D: z.number(),
  }),
  z.object({
    kind: z.literal('invalid'),
    diagnostics: z.array(diagnosticSchema),
  }),
]);

const metricsSchema = z.object({
  bias_difference: z.number(),
  relative_bias_pct: z.number(),
  relative_precision_pct: z.number().nullable(),
});

export const correctionDocSchema = z.object({
  observed: z.object({
    a: z.number(),
    b: z.number(),
    c: z.number(),
    d: z.number(),
    n_target: z.number(),
    n_comparator: z.number(),
  }),
  error_model: z.object({
    mode: z.string(),
    target: z.object({ sensitivity: z.number(), specificity: z.number() }),
    comparator: z.object({ sensitivity: z.number(), specificity: z.number() }),
  }),
  observed_estimate: estimateSchema.nullable(),
  correction: correctionSchema,
  corrected_estimate: estimateSchema.nullable().optional(),
  metrics: metricsSchema.nullable().optional(),
});

export const stratumDocSchema = z.object({
  incidence: z.number(),
  or: z.number(),
  n_per_arm: z.number(),
  realized_uncorrected_or: z.number(),
  estimable: z.number(),
  valid_count: z.number(),
  percentiles: z.array(
    z.object({
      point: z.string(),
      or_qba: z.number(),
      sensitivity: z.number(),
      specificity: z.number(),
      bias_difference: z.number(),
      relative_bias: z.number(),
    }),
  ),
  cells: z.array(
    z.object({
      sensitivity: z.number(),
      specificity: z.number(),
      valid: z.boolean(),
      or_qba: z.number().nullable(),
    }),
  ),
});

export const estimableRowSchema = z.object({
  incidence: z.number(),
  or: z.number(),
  estimable: z.number(),
});

const errorEnvelopeSchema = z.object({
  ok: z.literal(false),
  error: z.object({
    code: z.string(),
    message: z.string(),
    diagnostics: z.unknown().nullable(),
  }),
});

export type CorrectionDoc = z.infer<typeof correctionDocSchema>;
export type StratumDoc = z.infer<typeof stratumDocSchema>;
export type EstimableRow = z.infer<typeof estimableRowSchema>;

export interface CorrectRequest {
  table: { a: number; b: number; n_target: number; n_comparator: number };
  errors: {
    mode?: 'non_differential' | 'differential';
    target: { sensitivity: number; specificity: number };
    comparator?: { sensitivity: number; specificity: number };
  };
  variance_method?: string;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
    readonly diagnostics: unknown = null,
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

async function unwrap<T>(response: Response, schema: z.ZodType<T>): Promise<T> {
  const body: unknown = await response.json();
  if (!response.ok || (body as { ok?: boolean }).ok === false) {
    const parsed = errorEnvelopeSchema.safeParse(body);
    if (parsed.success) {
      const { code, message, diagnostics } = parsed.data.error;
      throw new ApiError(code, message, response.status, diagnostics);
    }
    throw new ApiError('unexpected', `HTTP ${response.status}`, response.status);
  }
  return schema.parse((body as { result: unknown }).result);
}

export class ApiClient {
  constructor(readonly baseUrl: string = '') {}

  async correct(request: CorrectRequest, signal?: AbortSignal): Promise<CorrectionDoc> {
    const response = await fetch(`${this.baseUrl}/api/v1/correct`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(request),
      signal,
    });
    return unwrap(response, correctionDocSchema);
  }

  async stratum(ip: number, or: number, signal?: AbortSignal): Promise<StratumDoc> {
    const params = new URLSearchParams({ ip: String(ip), or: String(or) });
    const response = await fetch(`${this.baseUrl}/api/v1/synth/stratum?${params}`, {
      signal,
    });
    return unwrap(response, stratumDocSchema);
  }

  async estimable(signal?: AbortSignal): Promise<EstimableRow[]> {
    const response = await fetch(`${this.baseUrl}/api/v1/synth/estimable`, { signal });
    return unwrap(response, z.array(estimableRowSchema));
  }
}
