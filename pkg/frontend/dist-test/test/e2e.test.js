// End-to-end: drives the list and detail views against the real exploration
// service over HTTP, on fixtures generated by the real pipeline.
import assert from 'node:assert/strict';
import { after, before, test } from 'node:test';
import { execFileSync, spawn } from 'node:child_process';
import { existsSync, mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { ApiClient } from '../src/api.js';
import { TopicDetailStore, TopicListStore } from '../src/state.js';
import { SIDE_COLORS, fitTransform, renderScene } from '../src/scene.js';
import { renderTopicDetail, renderTopicList } from '../src/view.js';
import { ShimDocument, ShimElement } from './domshim.js';
import { Fake2D } from './fake2d.js';
const PYTHON = process.env.POLARSCOPE_PYTHON ?? 'python3';
const DAY = '2015-06-03';
let workdir;
let server = null;
let base = '';
function cli(...args) {
    execFileSync(PYTHON, ['-m', 'polarscope.cli', ...args], { stdio: 'pipe' });
}
before(async () => {
    workdir = mkdtempSync(join(tmpdir(), 'polarscope-e2e-'));
    const corpus = join(workdir, 'corpus.jsonl');
    const dataDir = join(workdir, 'data');
    // controversial fixture (+ the "russia" search target) and a
    // non-controversial one, same instances as the layout oracles
    cli('gen', '--scenario', 'barbell', '--out', join(workdir, 'barbell.jsonl'), '--hashtag', 'russia_march', '--day', DAY, '-m', '20', '-b', '1');
    cli('gen', '--scenario', 'single-community', '--out', join(workdir, 'er.jsonl'), '--hashtag', 'sxsw', '--day', DAY, '-n', '100', '-p', '0.3', '--seed', '3');
    execFileSync('bash', ['-c',
        `cat ${join(workdir, 'barbell.jsonl')} ${join(workdir, 'er.jsonl')} > ${corpus}`]);
    cli('process', '--corpus', corpus, '--data-dir', dataDir, '--min-users', '1', '--seed', '42');
    const args = ['-m', 'polarscope.cli', 'serve', '--bind', '127.0.0.1:0',
        '--data-dir', dataDir];
    const dist = join(import.meta.dirname ?? '.', '..', '..', 'dist');
    if (existsSync(join(dist, 'index.html'))) {
        args.push('--static-dir', dist);
    }
    server = spawn(PYTHON, args, { stdio: ['ignore', 'pipe', 'pipe'] });
    base = await new Promise((resolve, reject) => {
        const timer = setTimeout(() => reject(new Error('service did not start')), 20000);
        let buffered = '';
        server.stderr.on('data', (chunk) => {
            buffered += chunk.toString();
            const match = buffered.match(/serving on (http:\/\/[\d.]+:\d+)/);
            if (match) {
                clearTimeout(timer);
                resolve(match[1]);
            }
        });
        server.on('exit', (code) => reject(new Error(`service exited early (${code})`)));
    });
});
after(() => {
    if (server)
        server.kill();
    if (workdir)
        rmSync(workdir, { recursive: true, force: true });
});
function handlers(store) {
    return {
        setSort: (sort) => void store.setSort(sort),
        setQuery: (query) => void store.setQuery(query),
        setPage: (page) => void store.setPage(page),
        openTopic: () => { },
        retry: () => void store.refresh(),
    };
}
function renderedRows(store) {
    const doc = new ShimDocument();
    const container = new ShimElement('main');
    renderTopicList(doc, container, store.state, handlers(store));
    return container.findByClass('topic-row');
}
async function rawTopics(path) {
    const response = await fetch(base + path);
    assert.ok(response.ok);
    return response.json();
}
function centroidStats(drawn) {
    const groups = [
        drawn.filter((d) => d.color === SIDE_COLORS.X),
        drawn.filter((d) => d.color === SIDE_COLORS.Y),
    ];
    const centroids = groups.map((group) => {
        const cx = group.reduce((acc, d) => acc + d.screenX, 0) / group.length;
        const cy = group.reduce((acc, d) => acc + d.screenY, 0) / group.length;
        return [cx, cy];
    });
    const separation = Math.hypot(centroids[0][0] - centroids[1][0], centroids[0][1] - centroids[1][1]);
    const spreads = groups.map((group, i) => group.reduce((acc, d) => acc + Math.hypot(d.screenX - centroids[i][0], d.screenY - centroids[i][1]), 0)
        / group.length);
    return { separation, spread: (spreads[0] + spreads[1]) / 2 };
}
test('health reports both fixture topics', async () => {
    const health = await rawTopics('/api/health');
    assert.equal(health.topics_indexed, 2);
});
test('list view renders API order and scores byte-identically', async () => {
    const store = new TopicListStore(new ApiClient(base));
    await store.refresh();
    const raw = await rawTopics('/api/topics?sort=score&page=0');
    const rows = renderedRows(store);
    assert.deepEqual(rows.map((row) => row.getAttribute('data-hashtag')), raw.topics.map((t) => t.hashtag));
    assert.deepEqual(rows.map((row) => row.getAttribute('data-score')), raw.topics.map((t) => JSON.stringify(t.display_score)));
    assert.equal(rows[0].getAttribute('data-hashtag'), 'russia_march');
});
test('sort toggle refetches and matches the date ordering', async () => {
    const store = new TopicListStore(new ApiClient(base));
    await store.refresh();
    await store.setSort('date');
    const raw = await rawTopics('/api/topics?sort=date&page=0');
    const rows = renderedRows(store);
    assert.deepEqual(rows.map((row) => [row.getAttribute('data-day'), row.getAttribute('data-hashtag')]), raw.topics.map((t) => [t.day, t.hashtag]));
});
test('search "russia" renders exactly the API match set', async () => {
    const store = new TopicListStore(new ApiClient(base));
    await store.setQuery('russia');
    const raw = await rawTopics('/api/topics?sort=score&q=russia&page=0');
    const rows = renderedRows(store);
    assert.deepEqual(rows.map((row) => row.getAttribute('data-hashtag')), raw.topics.map((t) => t.hashtag));
    assert.deepEqual(rows.map((row) => row.getAttribute('data-hashtag')), ['russia_march']);
});
test('detail view draws payload coordinates untouched', async () => {
    const store = new TopicDetailStore(new ApiClient(base));
    await store.load(DAY, 'russia_march');
    const record = store.state.record;
    assert.ok(record);
    const doc = new ShimDocument();
    const container = new ShimElement('main');
    const refs = renderTopicDetail(doc, container, store.state, { back: () => { } });
    assert.ok(refs.canvas);
    const badge = container.findByClass('score-badge')[0];
    assert.equal(badge.getAttribute('data-score'), JSON.stringify(record.score.display_score));
    const ctx = new Fake2D();
    const t = fitTransform(record.layout.nodes, 800, 600);
    const drawn = renderScene(ctx, 800, 600, record.layout.nodes, record.layout.links, t);
    assert.equal(drawn.length, record.layout.nodes.length);
    for (const [i, node] of record.layout.nodes.entries()) {
        assert.ok(Object.is(drawn[i].sceneX, node.x));
        assert.ok(Object.is(drawn[i].sceneY, node.y));
    }
    assert.equal(ctx.arcs.length, record.layout.nodes.length);
});
test('barbell fixture shows two separated color clusters', async () => {
    const store = new TopicDetailStore(new ApiClient(base));
    await store.load(DAY, 'russia_march');
    const record = store.state.record;
    const ctx = new Fake2D();
    const t = fitTransform(record.layout.nodes, 800, 600);
    const drawn = renderScene(ctx, 800, 600, record.layout.nodes, record.layout.links, t);
    const { separation, spread } = centroidStats(drawn);
    assert.ok(separation >= 2 * spread, `separation ${separation.toFixed(1)} < 2x spread ${spread.toFixed(1)}`);
});
test('single-community fixture shows intermixed colors', async () => {
    const store = new TopicDetailStore(new ApiClient(base));
    await store.load(DAY, 'sxsw');
    const record = store.state.record;
    const ctx = new Fake2D();
    const t = fitTransform(record.layout.nodes, 800, 600);
    const drawn = renderScene(ctx, 800, 600, record.layout.nodes, record.layout.links, t);
    const { separation, spread } = centroidStats(drawn);
    assert.ok(separation <= 1 * spread, `separation ${separation.toFixed(1)} > spread ${spread.toFixed(1)}`);
});
test('unknown topic surfaces the not-found state', async () => {
    const store = new TopicDetailStore(new ApiClient(base));
    await store.load(DAY, 'ghost');
    assert.equal(store.state.notFound, true);
});
test('static bundle is served when built', async (t) => {
    const dist = join(import.meta.dirname ?? '.', '..', '..', 'dist');
    if (!existsSync(join(dist, 'index.html'))) {
        t.skip('bundle not built; run npm run build first');
        return;
    }
    const response = await fetch(base + '/');
    assert.equal(response.status, 200);
    const html = await response.text();
    assert.match(html, /app\.js/);
});
