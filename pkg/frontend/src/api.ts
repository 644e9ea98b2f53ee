import { QueryRequest, QueryResponse } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export async function postQuery(
  baseUrl: string,
  request: QueryRequest,
  fetchFn: FetchLike = fetch,
): Promise<QueryResponse> {
  const response = await fetchFn(`${baseUrl}/query`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
  });
  if (!response.ok) {
    const body = await response.text();
    throw new Error(`query failed: HTTP ${response.status} ${body}`);
  }
  return (await response.json()) as QueryResponse;
}

export function documentUrl(baseUrl: string, docId: string): string {
  return `${baseUrl}/documents/${encodeURIComponent(docId)}`;
}
