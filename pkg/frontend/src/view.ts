import type { TopicDetailViewState, TopicListViewState } from './state.js';
import type { RepresentativeTweet, Side, TopicIndexEntry } from './types.js';

// Rendering uses a structural subset of the DOM so the same code runs against
// the browser document and the test shim. Rows carry the raw API values in
// data attributes (JSON-serialized) so fidelity is checkable end to end.

export interface ElementLike {
    className: string;
    textContent: string | null;
    value?: string;
    setAttribute(name: string, value: string): void;
    getAttribute(name: string): string | null;
    // parameter typed loosely so real DOM elements satisfy this structurally
    appendChild(child: any): unknown;
    replaceChildren(...children: any[]): void;
    addEventListener(type: string, listener: (event: any) => void): void;
}

export interface DocumentLike {
    createElement(tag: string): ElementLike;
}

export interface ListHandlers {
    setSort(sort: 'score' | 'date'): void;
    setQuery(query: string): void;
    setPage(page: number): void;
    openTopic(day: string, hashtag: string): void;
    retry(): void;
}

export interface DetailHandlers {
    back(): void;
}

function el(
    doc: DocumentLike, tag: string, className = '', text: string | null = null,
): ElementLike {
    const node = doc.createElement(tag);
    if (className) node.className = className;
    if (text !== null) node.textContent = text;
    return node;
}

export function formatScore(displayScore: number): string {
    return displayScore.toFixed(2);
}

export function renderTopicList(
    doc: DocumentLike,
    container: ElementLike,
    state: TopicListViewState,
    handlers: ListHandlers,
): void {
    const children: ElementLike[] = [];

    const controls = el(doc, 'div', 'controls');
    for (const sort of ['score', 'date'] as const) {
        const button = el(doc, 'button',
            state.sort === sort ? 'sort-toggle active' : 'sort-toggle',
            sort === 'score' ? 'By controversy' : 'By date');
        button.setAttribute('data-sort', sort);
        button.addEventListener('click', () => handlers.setSort(sort));
        controls.appendChild(button);
    }
    const search = el(doc, 'input', 'search');
    search.setAttribute('type', 'search');
    search.setAttribute('placeholder', 'Search topics…');
    search.value = state.query;
    search.addEventListener('input', (event) => {
        const target = (event as { target?: { value?: string } }).target;
        handlers.setQuery(target?.value ?? '');
    });
    controls.appendChild(search);
    children.push(controls);

    if (state.error !== null) {
        const banner = el(doc, 'div', 'error-banner', `Could not load topics: ${state.error}`);
        const retry = el(doc, 'button', 'retry', 'Retry');
        retry.addEventListener('click', () => handlers.retry());
        banner.appendChild(retry);
        children.push(banner);
    } else if (state.loading && state.entries.length === 0) {
        children.push(el(doc, 'div', 'status', 'Loading…'));
    } else if (state.entries.length === 0) {
        children.push(el(doc, 'div', 'status empty', 'No topics'));
    } else {
        const list = el(doc, 'div', 'topic-list');
        for (const entry of state.entries) {
            list.appendChild(topicRow(doc, entry, handlers));
        }
        children.push(list);

        const pager = el(doc, 'div', 'pager');
        const prev = el(doc, 'button', 'page-prev', 'Previous');
        prev.addEventListener('click', () => handlers.setPage(state.page - 1));
        const label = el(doc, 'span', 'page-label',
            `Page ${state.page + 1} of ${Math.max(state.totalPages, 1)} (${state.total} topics)`);
        const next = el(doc, 'button', 'page-next', 'Next');
        next.addEventListener('click', () => handlers.setPage(state.page + 1));
        pager.appendChild(prev);
        pager.appendChild(label);
        pager.appendChild(next);
        children.push(pager);
    }

    container.replaceChildren(...children);
}

function topicRow(doc: DocumentLike, entry: TopicIndexEntry, handlers: ListHandlers): ElementLike {
    const row = el(doc, 'div', 'topic-row');
    row.setAttribute('data-day', entry.day);
    row.setAttribute('data-hashtag', entry.hashtag);
    row.setAttribute('data-score', JSON.stringify(entry.display_score));
    row.appendChild(el(doc, 'span', 'hashtag', `#${entry.hashtag}`));
    row.appendChild(el(doc, 'span', 'day', entry.day));
    row.appendChild(el(doc, 'span', 'score-badge', formatScore(entry.display_score)));
    if (entry.keywords.length) {
        row.appendChild(el(doc, 'span', 'keywords', entry.keywords.slice(0, 5).join(', ')));
    }
    row.addEventListener('click', () => handlers.openTopic(entry.day, entry.hashtag));
    return row;
}

function representativePanel(
    doc: DocumentLike, side: Side, tweets: RepresentativeTweet[],
): ElementLike {
    const panel = el(doc, 'div', `side-panel side-${side.toLowerCase()}`);
    panel.appendChild(el(doc, 'h3', 'side-title', `Side ${side}`));
    if (tweets.length === 0) {
        panel.appendChild(el(doc, 'div', 'status empty', 'No original tweets'));
        return panel;
    }
    for (const tweet of tweets) {
        const item = el(doc, 'div', 'tweet');
        item.setAttribute('data-tweet-id', tweet.tweet_id);
        item.appendChild(el(doc, 'span', 'tweet-user',
            `@${tweet.user} · ${tweet.endorsements} endorsements`));
        item.appendChild(el(doc, 'div', 'tweet-text', tweet.text));
        panel.appendChild(item);
    }
    return panel;
}

export interface DetailRefs {
    canvas: ElementLike | null;
}

export function renderTopicDetail(
    doc: DocumentLike,
    container: ElementLike,
    state: TopicDetailViewState,
    handlers: DetailHandlers,
): DetailRefs {
    const children: ElementLike[] = [];
    const refs: DetailRefs = { canvas: null };

    const back = el(doc, 'button', 'back', '← All topics');
    back.addEventListener('click', () => handlers.back());
    children.push(back);

    if (state.loading) {
        children.push(el(doc, 'div', 'status', 'Loading…'));
    } else if (state.notFound) {
        children.push(el(doc, 'div', 'status not-found',
            `No topic ${state.day ?? ''}/${state.hashtag ?? ''}`));
    } else if (state.error !== null) {
        children.push(el(doc, 'div', 'error-banner', `Could not load topic: ${state.error}`));
    } else if (state.record !== null) {
        const record = state.record;
        const header = el(doc, 'div', 'detail-header');
        header.appendChild(el(doc, 'h2', 'detail-title', `#${record.hashtag}`));
        header.appendChild(el(doc, 'span', 'day', record.day));
        const badge = el(doc, 'span', 'score-badge', formatScore(record.score.display_score));
        badge.setAttribute('data-score', JSON.stringify(record.score.display_score));
        header.appendChild(badge);
        header.appendChild(el(doc, 'span', 'stats',
            `${record.stats.vertices} users · ${record.stats.retweets} retweets`));
        children.push(header);

        const canvas = el(doc, 'canvas', 'graph-canvas');
        canvas.setAttribute('width', '800');
        canvas.setAttribute('height', '600');
        refs.canvas = canvas;
        children.push(canvas);

        if (record.summary.related_keywords.length) {
            const keywords = el(doc, 'div', 'keyword-list');
            keywords.appendChild(el(doc, 'h3', '', 'Related keywords'));
            keywords.appendChild(el(doc, 'div', 'keywords',
                record.summary.related_keywords.map(([term]) => term).join(', ')));
            children.push(keywords);
        }

        const sides = el(doc, 'div', 'side-panels');
        sides.appendChild(representativePanel(doc, 'X', record.summary.representative.X));
        sides.appendChild(representativePanel(doc, 'Y', record.summary.representative.Y));
        children.push(sides);
    }

    container.replaceChildren(...children);
    return refs;
}
