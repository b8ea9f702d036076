// Thin client over the analysis HTTP API. The fetch implementation is
// injectable so tests can record traffic.

import type { AnalysisOptions, GraphDoc, Report, ViewName } from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`);
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    return (await resp.json()) as T;
  }

  async health(): Promise<boolean> {
    try {
      const doc = await this.getJson<{ status: string }>('/api/health');
      return doc.status === 'ok';
    } catch {
      return false;
    }
  }

  listPrograms(): Promise<{ programs: string[] }> {
    return this.getJson('/api/programs');
  }

  async submit(corpus: string, options: AnalysisOptions): Promise<string> {
    const resp = await this.fetchImpl(`${this.baseUrl}/api/analyses`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ corpus, options }),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    const doc = (await resp.json()) as { id: string };
    return doc.id;
  }

  // Either an in-flight status or, once done, the full report.
  poll(jobId: string): Promise<Report | { status: string; error_message?: string }> {
    return this.getJson(`/api/analyses/${jobId}`);
  }

  slice(jobId: string, sliceId: number, view: ViewName): Promise<GraphDoc> {
    return this.getJson(`/api/analyses/${jobId}/slices/${sliceId}?view=${view}`);
  }
}

export function isReport(doc: unknown): doc is Report {
  return typeof doc === 'object' && doc !== null && 'slices' in doc && 'totals' in doc;
}
