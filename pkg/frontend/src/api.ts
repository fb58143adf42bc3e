import type { HealthResponse, SortMode, TopicListResponse, TopicRecord } from './types.js';

export type FetchLike = (url: string) => Promise<{
    ok: boolean;
    status: number;
    json(): Promise<unknown>;
}>;

export class ApiRequestError extends Error {
    constructor(readonly status: number, readonly code: string, message: string) {
        super(message);
    }
}

async function request<T>(fetchImpl: FetchLike, url: string): Promise<T> {
    const response = await fetchImpl(url);
    if (!response.ok) {
        let code = 'http_error';
        let message = `request failed with status ${response.status}`;
        try {
            const body = (await response.json()) as { error?: { code: string; message: string } };
            if (body.error) {
                code = body.error.code;
                message = body.error.message;
            }
        } catch {
            // non-JSON error body; keep the generic message
        }
        throw new ApiRequestError(response.status, code, message);
    }
    return (await response.json()) as T;
}

/** Thin typed client for the read-only exploration API. */
export class ApiClient {
    constructor(
        private readonly base: string = '',
        private readonly fetchImpl: FetchLike = (url) => fetch(url),
    ) {}

    listTopics(sort: SortMode, query: string, page: number): Promise<TopicListResponse> {
        const params = new URLSearchParams({ sort, page: String(page) });
        if (query) params.set('q', query);
        return request(this.fetchImpl, `${this.base}/api/topics?${params}`);
    }

    getTopic(day: string, hashtag: string): Promise<TopicRecord> {
        return request(
            this.fetchImpl,
            `${this.base}/api/topics/${encodeURIComponent(day)}/${encodeURIComponent(hashtag)}`,
        );
    }

    health(): Promise<HealthResponse> {
        return request(this.fetchImpl, `${this.base}/api/health`);
    }
}
