// Shapes of the exploration API payloads. Field names mirror the server's
// JSON exactly; the client never derives or recomputes any of these values.

export type SortMode = 'score' | 'date';
export type Side = 'X' | 'Y';

export interface TopicIndexEntry {
    hashtag: string;
    day: string; // YYYY-MM-DD
    display_score: number;
    rwc_raw: number;
    vertices: number;
    keywords: string[];
}

export interface TopicListResponse {
    topics: TopicIndexEntry[];
    page: number;
    page_size: number;
    total: number;
    total_pages: number;
}

export interface LayoutNode {
    id: number;
    user: string;
    x: number;
    y: number;
    side: Side;
    endorsements: number;
}

export interface LayoutLink {
    source: number;
    target: number;
    weight: number;
}

export interface RepresentativeTweet {
    user: string;
    tweet_id: string;
    text: string;
    endorsements: number;
}

export interface TopicRecord {
    schema_version: number;
    hashtag: string;
    day: string;
    stats: {
        vertices: number;
        edges: number;
        retweets: number;
        tweets: number;
        largest_component_fraction: number;
        scored_vertices: number;
        scored_edges: number;
    };
    partition: {
        sides: Side[];
        cut_weight: number;
        balance: number;
        seed: number;
    };
    score: {
        p_xx: number;
        p_xy: number;
        p_yx: number;
        p_yy: number;
        rwc_raw: number;
        display_score: number;
        k: number;
        method: string;
        walks: number | null;
        stderr_estimate: number | null;
        discarded: number;
    };
    layout: {
        nodes: LayoutNode[];
        links: LayoutLink[];
        converged: boolean;
        mean_displacement: number;
    };
    summary: {
        hashtag: string;
        related_keywords: [string, number][];
        representative: Record<Side, RepresentativeTweet[]>;
    };
    provenance: Record<string, unknown>;
}

export interface HealthResponse {
    status: string;
    topics_indexed: number;
    schema_version: number;
}

export interface ApiError {
    error: { code: string; message: string };
}
