export class TopicListStore {
    constructor(api) {
        this.api = api;
        this.state = {
            sort: 'score',
            query: '',
            page: 0,
            entries: [],
            total: 0,
            totalPages: 0,
            loading: false,
            error: null,
        };
        this.requestId = 0;
        this.listeners = [];
    }
    subscribe(listener) {
        this.listeners.push(listener);
    }
    emit() {
        for (const listener of this.listeners)
            listener(this.state);
    }
    setSort(sort) {
        this.state = { ...this.state, sort, page: 0 };
        return this.refresh();
    }
    setQuery(query) {
        this.state = { ...this.state, query, page: 0 };
        return this.refresh();
    }
    setPage(page) {
        this.state = { ...this.state, page: Math.max(0, page) };
        return this.refresh();
    }
    /** Fetch the current (sort, query, page); stale responses are dropped. */
    async refresh() {
        const id = ++this.requestId;
        this.state = { ...this.state, loading: true, error: null };
        this.emit();
        try {
            const response = await this.api.listTopics(this.state.sort, this.state.query, this.state.page);
            if (id !== this.requestId)
                return; // a newer request superseded this one
            this.state = {
                ...this.state,
                entries: response.topics,
                total: response.total,
                totalPages: response.total_pages,
                loading: false,
            };
        }
        catch (error) {
            if (id !== this.requestId)
                return;
            this.state = {
                ...this.state,
                loading: false,
                error: error instanceof Error ? error.message : String(error),
            };
        }
        this.emit();
    }
}
export class TopicDetailStore {
    constructor(api) {
        this.api = api;
        this.state = {
            day: null,
            hashtag: null,
            record: null,
            loading: false,
            notFound: false,
            error: null,
        };
        this.requestId = 0;
        this.listeners = [];
    }
    subscribe(listener) {
        this.listeners.push(listener);
    }
    emit() {
        for (const listener of this.listeners)
            listener(this.state);
    }
    async load(day, hashtag) {
        const id = ++this.requestId;
        this.state = { day, hashtag, record: null, loading: true, notFound: false, error: null };
        this.emit();
        try {
            const record = await this.api.getTopic(day, hashtag);
            if (id !== this.requestId)
                return;
            this.state = { ...this.state, record, loading: false };
        }
        catch (error) {
            if (id !== this.requestId)
                return;
            const status = error.status;
            this.state = {
                ...this.state,
                loading: false,
                notFound: status === 404,
                error: error instanceof Error ? error.message : String(error),
            };
        }
        this.emit();
    }
}
