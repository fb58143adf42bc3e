import type { ApiClient } from './api.js';
import type { SortMode, TopicIndexEntry, TopicRecord } from './types.js';

// The list state keeps entries exactly as the API returned them (same order,
// same values); rendering iterates the array without re-sorting.

export interface TopicListViewState {
    sort: SortMode;
    query: string;
    page: number;
    entries: TopicIndexEntry[];
    total: number;
    totalPages: number;
    loading: boolean;
    error: string | null;
}

export class TopicListStore {
    state: TopicListViewState = {
        sort: 'score',
        query: '',
        page: 0,
        entries: [],
        total: 0,
        totalPages: 0,
        loading: false,
        error: null,
    };

    private requestId = 0;
    private listeners: Array<(state: TopicListViewState) => void> = [];

    constructor(private readonly api: ApiClient) {}

    subscribe(listener: (state: TopicListViewState) => void): void {
        this.listeners.push(listener);
    }

    private emit(): void {
        for (const listener of this.listeners) listener(this.state);
    }

    setSort(sort: SortMode): Promise<void> {
        this.state = { ...this.state, sort, page: 0 };
        return this.refresh();
    }

    setQuery(query: string): Promise<void> {
        this.state = { ...this.state, query, page: 0 };
        return this.refresh();
    }

    setPage(page: number): Promise<void> {
        this.state = { ...this.state, page: Math.max(0, page) };
        return this.refresh();
    }

    /** Fetch the current (sort, query, page); stale responses are dropped. */
    async refresh(): Promise<void> {
        const id = ++this.requestId;
        this.state = { ...this.state, loading: true, error: null };
        this.emit();
        try {
            const response = await this.api.listTopics(
                this.state.sort, this.state.query, this.state.page);
            if (id !== this.requestId) return; // a newer request superseded this one
            this.state = {
                ...this.state,
                entries: response.topics,
                total: response.total,
                totalPages: response.total_pages,
                loading: false,
            };
        } catch (error) {
            if (id !== this.requestId) return;
            this.state = {
                ...this.state,
                loading: false,
                error: error instanceof Error ? error.message : String(error),
            };
        }
        this.emit();
    }
}

export interface TopicDetailViewState {
    day: string | null;
    hashtag: string | null;
    record: TopicRecord | null;
    loading: boolean;
    notFound: boolean;
    error: string | null;
}

export class TopicDetailStore {
    state: TopicDetailViewState = {
        day: null,
        hashtag: null,
        record: null,
        loading: false,
        notFound: false,
        error: null,
    };

    private requestId = 0;
    private listeners: Array<(state: TopicDetailViewState) => void> = [];

    constructor(private readonly api: ApiClient) {}

    subscribe(listener: (state: TopicDetailViewState) => void): void {
        this.listeners.push(listener);
    }

    private emit(): void {
        for (const listener of this.listeners) listener(this.state);
    }

    async load(day: string, hashtag: string): Promise<void> {
        const id = ++this.requestId;
        this.state = { day, hashtag, record: null, loading: true, notFound: false, error: null };
        this.emit();
        try {
            const record = await this.api.getTopic(day, hashtag);
            if (id !== this.requestId) return;
            this.state = { ...this.state, record, loading: false };
        } catch (error) {
            if (id !== this.requestId) return;
            const status = (error as { status?: number }).status;
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
