export class ApiRequestError extends Error {
    constructor(status, code, message) {
        super(message);
        this.status = status;
        this.code = code;
    }
}
async function request(fetchImpl, url) {
    const response = await fetchImpl(url);
    if (!response.ok) {
        let code = 'http_error';
        let message = `request failed with status ${response.status}`;
        try {
            const body = (await response.json());
            if (body.error) {
                code = body.error.code;
                message = body.error.message;
            }
        }
        catch {
            // non-JSON error body; keep the generic message
        }
        throw new ApiRequestError(response.status, code, message);
    }
    return (await response.json());
}
/** Thin typed client for the read-only exploration API. */
export class ApiClient {
    constructor(base = '', fetchImpl = (url) => fetch(url)) {
        this.base = base;
        this.fetchImpl = fetchImpl;
    }
    listTopics(sort, query, page) {
        const params = new URLSearchParams({ sort, page: String(page) });
        if (query)
            params.set('q', query);
        return request(this.fetchImpl, `${this.base}/api/topics?${params}`);
    }
    getTopic(day, hashtag) {
        return request(this.fetchImpl, `${this.base}/api/topics/${encodeURIComponent(day)}/${encodeURIComponent(hashtag)}`);
    }
    health() {
        return request(this.fetchImpl, `${this.base}/api/health`);
    }
}
