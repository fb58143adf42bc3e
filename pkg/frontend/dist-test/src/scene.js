// Canvas drawing of the precomputed server layout. The client never runs a
// layout engine: scene coordinates are the payload's x/y values untouched,
// and pan/zoom is a pure view transform on top of them.
export const SIDE_COLORS = {
    X: '#1f77b4', // blue
    Y: '#d62728', // red
};
export function fitTransform(nodes, width, height, margin = 24) {
    if (nodes.length === 0)
        return { scale: 1, tx: width / 2, ty: height / 2 };
    let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
    for (const node of nodes) {
        minX = Math.min(minX, node.x);
        maxX = Math.max(maxX, node.x);
        minY = Math.min(minY, node.y);
        maxY = Math.max(maxY, node.y);
    }
    const spanX = Math.max(maxX - minX, 1e-9);
    const spanY = Math.max(maxY - minY, 1e-9);
    const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
    return {
        scale,
        tx: width / 2 - scale * (minX + maxX) / 2,
        ty: height / 2 - scale * (minY + maxY) / 2,
    };
}
export function pan(t, dx, dy) {
    return { ...t, tx: t.tx + dx, ty: t.ty + dy };
}
/** Zoom by `factor` keeping the screen point (sx, sy) fixed. */
export function zoomAt(t, sx, sy, factor) {
    const scale = Math.min(Math.max(t.scale * factor, 1e-6), 1e6);
    const applied = scale / t.scale;
    return {
        scale,
        tx: sx - (sx - t.tx) * applied,
        ty: sy - (sy - t.ty) * applied,
    };
}
export function toScreen(t, x, y) {
    return [x * t.scale + t.tx, y * t.scale + t.ty];
}
export function nodeRadius(endorsements, maxEndorsements) {
    if (maxEndorsements <= 0)
        return 3;
    return 3 + 9 * Math.sqrt(endorsements / maxEndorsements);
}
/** Draw the graph; returns what was drawn so tests can verify fidelity. */
export function renderScene(ctx, width, height, nodes, links, transform) {
    ctx.clearRect(0, 0, width, height);
    const byId = new Map();
    for (const node of nodes)
        byId.set(node.id, node);
    ctx.globalAlpha = 0.35;
    ctx.strokeStyle = '#999999';
    ctx.lineWidth = 0.5;
    ctx.beginPath();
    for (const link of links) {
        const a = byId.get(link.source);
        const b = byId.get(link.target);
        if (!a || !b)
            continue;
        const [ax, ay] = toScreen(transform, a.x, a.y);
        const [bx, by] = toScreen(transform, b.x, b.y);
        ctx.moveTo(ax, ay);
        ctx.lineTo(bx, by);
    }
    ctx.stroke();
    ctx.globalAlpha = 1.0;
    const maxEndorsements = nodes.reduce((acc, n) => Math.max(acc, n.endorsements), 0);
    const drawn = [];
    for (const node of nodes) {
        const [sx, sy] = toScreen(transform, node.x, node.y);
        const radius = nodeRadius(node.endorsements, maxEndorsements);
        const color = SIDE_COLORS[node.side];
        ctx.fillStyle = color;
        ctx.beginPath();
        ctx.arc(sx, sy, radius, 0, 2 * Math.PI);
        ctx.fill();
        drawn.push({
            id: node.id,
            sceneX: node.x,
            sceneY: node.y,
            screenX: sx,
            screenY: sy,
            radius,
            color,
            side: node.side,
        });
    }
    return drawn;
}
