// Shapes of the qpseed/1 JSON documents served by the backend. The UI
// renders these verbatim and never computes algebra on its own.

import { z } from "zod";

export const ArrowSchema = z.object({
  id: z.string(),
  tail: z.string(),
  head: z.string(),
});

export const TermSchema = z.object({
  coef: z.string(),
  cycle: z.array(z.string()),
});

export const QpSchema = z.object({
  schema: z.string(),
  vertices: z.array(z.string()),
  arrows: z.array(ArrowSchema),
  potential: z.array(TermSchema),
});

const PathTermSchema = z.object({
  coef: z.string(),
  word: z.array(z.string()),
});

const ReductionSchema = z.object({
  pair: z.tuple([z.string(), z.string()]),
  rescale: z.string(),
  u: z.array(PathTermSchema),
  v: z.array(PathTermSchema),
});

export const LogSchema = z.object({
  vertex: z.string(),
  composites: z.array(ArrowSchema),
  reversed_arrows: z.array(z.tuple([z.string(), z.string()])),
  reductions: z.array(ReductionSchema),
  result_hash: z.string(),
});

export const FlagsSchema = z.object({
  two_acyclic: z.boolean(),
  empty_cycles: z.array(z.array(z.string())),
});

export const MutateResponseSchema = z.object({
  schema: z.string(),
  qp: QpSchema,
  log: LogSchema,
  flags: FlagsSchema,
});

export const GraphNodeSchema = z.object({
  key: z.string(),
  word: z.array(z.string()),
  qp: QpSchema,
});

export const GraphSchema = z.object({
  schema: z.string(),
  status: z.enum(["COMPLETE", "DEPTH_BOUNDED", "BUDGET"]),
  depth: z.number().nullable(),
  nodes: z.array(GraphNodeSchema),
  edges: z.array(z.tuple([z.string(), z.string(), z.string()])),
  frontier: z.array(z.string()),
});

export const ErrorSchema = z.object({
  schema: z.string().optional(),
  error: z.looseObject({
    type: z.string(),
    message: z.string(),
  }),
});

export type ArrowDoc = z.infer<typeof ArrowSchema>;
export type TermDoc = z.infer<typeof TermSchema>;
export type QpDoc = z.infer<typeof QpSchema>;
export type LogDoc = z.infer<typeof LogSchema>;
export type FlagsDoc = z.infer<typeof FlagsSchema>;
export type MutateResponse = z.infer<typeof MutateResponseSchema>;
export type GraphNodeDoc = z.infer<typeof GraphNodeSchema>;
export type GraphDoc = z.infer<typeof GraphSchema>;
export type ErrorDoc = z.infer<typeof ErrorSchema>;
