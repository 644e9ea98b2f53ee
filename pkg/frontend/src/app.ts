import { FetchLike, postQuery } from "./api.js";
import { ResultRow } from "./types.js";

export interface AppState {
  results: ResultRow[] | null;
  error: string | null;
  loading: boolean;
  retrieverTopK: number;
  readerTopK: number;
}

/**
 * UI controller: current query, top@k controls, and the last response.
 *
 * One query is in flight at a time; every submission bumps a sequence
 * number and responses arriving for a stale sequence are dropped. A failed
 * request raises the error banner but keeps the previous results visible.
 */
export class App {
  private seq = 0;
  private lastQuery = "";

  state: AppState = {
    results: null,
    error: null,
    loading: false,
    retrieverTopK: 10,
    readerTopK: 5,
  };

  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike,
    private onChange: (state: AppState) => void = () => {},
  ) {}

  async submitQuery(text: string): Promise<void> {
    const query = text.trim();
    if (!query) {
      return;
    }
    this.lastQuery = query;
    const mySeq = ++this.seq;
    this.state.loading = true;
    this.state.error = null;
    this.onChange(this.state);
    try {
      const response = await postQuery(
        this.baseUrl,
        {
          query,
          retriever_top_k: this.state.retrieverTopK,
          reader_top_k: this.state.readerTopK,
        },
        this.fetchFn,
      );
      if (mySeq !== this.seq) {
        return; // a newer submission superseded this response
      }
      this.state.results = response.answers;
      this.state.error = null;
    } catch (err) {
      if (mySeq !== this.seq) {
        return;
      }
      // previous results stay on screen behind the banner
      this.state.error = err instanceof Error ? err.message : String(err);
    } finally {
      if (mySeq === this.seq) {
        this.state.loading = false;
        this.onChange(this.state);
      }
    }
  }

  /** Returns an inline validation error, or null and re-issues the query. */
  setRetrieverTopK(raw: string): string | null {
    return this.setControl(raw, (v) => (this.state.retrieverTopK = v));
  }

  setReaderTopK(raw: string): string | null {
    return this.setControl(raw, (v) => (this.state.readerTopK = v));
  }

  private setControl(raw: string, assign: (v: number) => void): string | null {
    const value = Number(raw);
    if (!Number.isInteger(value) || value < 1) {
      return `top-k must be a whole number >= 1, got "${raw}"`;
    }
    assign(value);
    if (this.lastQuery) {
      void this.submitQuery(this.lastQuery);
    }
    return null;
  }
}
