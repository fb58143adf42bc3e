// Minimal DOM stand-in implementing exactly the structural interface the
// views use, so tests run under plain node.
export class ShimElement {
    constructor(tag) {
        this.tag = tag;
        this.className = '';
        this.children = [];
        this.attributes = new Map();
        this.listeners = new Map();
        this.text = null;
    }
    get textContent() {
        if (this.children.length === 0)
            return this.text;
        return this.children.map((child) => child.textContent ?? '').join('');
    }
    set textContent(value) {
        this.children = [];
        this.text = value;
    }
    setAttribute(name, value) {
        this.attributes.set(name, value);
    }
    getAttribute(name) {
        return this.attributes.get(name) ?? null;
    }
    appendChild(child) {
        this.children.push(child);
        return child;
    }
    replaceChildren(...children) {
        this.children = children;
    }
    addEventListener(type, listener) {
        const existing = this.listeners.get(type) ?? [];
        existing.push(listener);
        this.listeners.set(type, existing);
    }
    dispatch(type, event = {}) {
        for (const listener of this.listeners.get(type) ?? [])
            listener(event);
    }
    /** Depth-first search over the subtree. */
    findAll(predicate) {
        const found = [];
        const walk = (node) => {
            if (predicate(node))
                found.push(node);
            for (const child of node.children)
                walk(child);
        };
        walk(this);
        return found;
    }
    findByClass(className) {
        return this.findAll((node) => node.className.split(' ').includes(className));
    }
}
export class ShimDocument {
    createElement(tag) {
        return new ShimElement(tag);
    }
}
