import { ApiClient } from './api.js';
import { TopicDetailStore, TopicListStore } from './state.js';
import { fitTransform, pan, renderScene, zoomAt } from './scene.js';
import { renderTopicDetail, renderTopicList } from './view.js';
// Hash routes: #/ (list) and #/topic/<day>/<hashtag> (detail).
const api = new ApiClient('');
const listStore = new TopicListStore(api);
const detailStore = new TopicDetailStore(api);
const app = document.getElementById('app');
function currentRoute() {
    const hash = window.location.hash;
    const match = hash.match(/^#\/topic\/([^/]+)\/(.+)$/);
    if (match) {
        return {
            view: 'detail',
            day: decodeURIComponent(match[1]),
            hashtag: decodeURIComponent(match[2]),
        };
    }
    return { view: 'list' };
}
const listHandlers = {
    setSort: (sort) => void listStore.setSort(sort),
    setQuery: (query) => void listStore.setQuery(query),
    setPage: (page) => void listStore.setPage(page),
    openTopic: (day, hashtag) => {
        window.location.hash = `#/topic/${encodeURIComponent(day)}/${encodeURIComponent(hashtag)}`;
    },
    retry: () => void listStore.refresh(),
};
const detailHandlers = {
    back: () => {
        window.location.hash = '#/';
    },
};
let transform = null;
function wireCanvas(canvas) {
    const record = detailStore.state.record;
    if (!record)
        return;
    const ctx = canvas.getContext('2d');
    if (!ctx)
        return;
    const { nodes, links } = record.layout;
    transform = transform ?? fitTransform(nodes, canvas.width, canvas.height);
    const draw = () => renderScene(ctx, canvas.width, canvas.height, nodes, links, transform);
    let dragging = false;
    let lastX = 0;
    let lastY = 0;
    canvas.addEventListener('pointerdown', (event) => {
        dragging = true;
        lastX = event.offsetX;
        lastY = event.offsetY;
        canvas.setPointerCapture(event.pointerId);
    });
    canvas.addEventListener('pointermove', (event) => {
        if (!dragging)
            return;
        transform = pan(transform, event.offsetX - lastX, event.offsetY - lastY);
        lastX = event.offsetX;
        lastY = event.offsetY;
        draw();
    });
    canvas.addEventListener('pointerup', () => {
        dragging = false;
    });
    canvas.addEventListener('wheel', (event) => {
        event.preventDefault();
        const factor = event.deltaY < 0 ? 1.15 : 1 / 1.15;
        transform = zoomAt(transform, event.offsetX, event.offsetY, factor);
        draw();
    }, { passive: false });
    draw();
}
function render() {
    const route = currentRoute();
    if (route.view === 'list') {
        renderTopicList(document, app, listStore.state, listHandlers);
    }
    else {
        const refs = renderTopicDetail(document, app, detailStore.state, detailHandlers);
        if (refs.canvas) {
            wireCanvas(refs.canvas);
        }
    }
}
listStore.subscribe(render);
detailStore.subscribe(render);
function onRouteChange() {
    const route = currentRoute();
    transform = null;
    if (route.view === 'list') {
        void listStore.refresh();
    }
    else {
        void detailStore.load(route.day, route.hashtag);
    }
    render();
}
window.addEventListener('hashchange', onRouteChange);
onRouteChange();
