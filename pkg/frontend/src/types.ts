export interface Offsets {
  start: number;
  end: number;
}

export interface ResultRow {
  index: number;
  answer: string;
  type: "extractive" | "no_answer";
  score: number;
  context: string;
  meta: Record<string, unknown>;
  offsets_in_document: Offsets;
  offsets_in_context: Offsets;
  doc_id: string;
}

export interface QueryRequest {
  query: string;
  retriever_top_k: number;
  reader_top_k: number;
}

export interface QueryResponse {
  answers: ResultRow[];
}

/** Three-way split of a context around the answer span. */
export interface Highlight {
  before: string;
  answer: string;
  after: string;
  /** false when offsets were unusable and no highlighting applies */
  valid: boolean;
}

export interface ResultViewModel {
  row: ResultRow;
  title: string;
  confidence: string;
  highlight: Highlight;
  documentUrl: string;
}
