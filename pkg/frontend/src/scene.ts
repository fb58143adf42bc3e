import type { LayoutLink, LayoutNode, Side } from './types.js';

// Canvas drawing of the precomputed server layout. The client never runs a
// layout engine: scene coordinates are the payload's x/y values untouched,
// and pan/zoom is a pure view transform on top of them.

export const SIDE_COLORS: Record<Side, string> = {
    X: '#1f77b4', // blue
    Y: '#d62728', // red
};

export interface ViewTransform {
    scale: number;
    tx: number;
    ty: number;
}

export interface Canvas2DLike {
    fillStyle: string | CanvasGradient | CanvasPattern;
    strokeStyle: string | CanvasGradient | CanvasPattern;
    lineWidth: number;
    globalAlpha: number;
    clearRect(x: number, y: number, w: number, h: number): void;
    beginPath(): void;
    moveTo(x: number, y: number): void;
    lineTo(x: number, y: number): void;
    stroke(): void;
    arc(x: number, y: number, r: number, a0: number, a1: number): void;
    fill(): void;
}

export interface DrawnNode {
    id: number;
    sceneX: number;
    sceneY: number;
    screenX: number;
    screenY: number;
    radius: number;
    color: string;
    side: Side;
}

export function fitTransform(
    nodes: LayoutNode[], width: number, height: number, margin = 24,
): ViewTransform {
    if (nodes.length === 0) return { scale: 1, tx: width / 2, ty: height / 2 };
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

export function pan(t: ViewTransform, dx: number, dy: number): ViewTransform {
    return { ...t, tx: t.tx + dx, ty: t.ty + dy };
}

/** Zoom by `factor` keeping the screen point (sx, sy) fixed. */
export function zoomAt(t: ViewTransform, sx: number, sy: number, factor: number): ViewTransform {
    const scale = Math.min(Math.max(t.scale * factor, 1e-6), 1e6);
    const applied = scale / t.scale;
    return {
        scale,
        tx: sx - (sx - t.tx) * applied,
        ty: sy - (sy - t.ty) * applied,
    };
}

export function toScreen(t: ViewTransform, x: number, y: number): [number, number] {
    return [x * t.scale + t.tx, y * t.scale + t.ty];
}

export function nodeRadius(endorsements: number, maxEndorsements: number): number {
    if (maxEndorsements <= 0) return 3;
    return 3 + 9 * Math.sqrt(endorsements / maxEndorsements);
}

/** Draw the graph; returns what was drawn so tests can verify fidelity. */
export function renderScene(
    ctx: Canvas2DLike,
    width: number,
    height: number,
    nodes: LayoutNode[],
    links: LayoutLink[],
    transform: ViewTransform,
): DrawnNode[] {
    ctx.clearRect(0, 0, width, height);

    const byId = new Map<number, LayoutNode>();
    for (const node of nodes) byId.set(node.id, node);

    ctx.globalAlpha = 0.35;
    ctx.strokeStyle = '#999999';
    ctx.lineWidth = 0.5;
    ctx.beginPath();
    for (const link of links) {
        const a = byId.get(link.source);
        const b = byId.get(link.target);
        if (!a || !b) continue;
        const [ax, ay] = toScreen(transform, a.x, a.y);
        const [bx, by] = toScreen(transform, b.x, b.y);
        ctx.moveTo(ax, ay);
        ctx.lineTo(bx, by);
    }
    ctx.stroke();

    ctx.globalAlpha = 1.0;
    const maxEndorsements = nodes.reduce((acc, n) => Math.max(acc, n.endorsements), 0);
    const drawn: DrawnNode[] = [];
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
