/** Small element builders; no framework. */
function apply(el, attrs, children) {
    for (const [key, value] of Object.entries(attrs)) {
        if (typeof value === "function") {
            el.addEventListener(key.replace(/^on/, ""), value);
        }
        else if (typeof value === "boolean") {
            if (value)
                el.setAttribute(key, "");
        }
        else {
            el.setAttribute(key, String(value));
        }
    }
    for (const child of children) {
        el.append(child instanceof Node ? child : document.createTextNode(child));
    }
}
export function h(tag, attrs = {}, ...children) {
    const el = document.createElement(tag);
    apply(el, attrs, children);
    return el;
}
const SVG_NS = "http://www.w3.org/2000/svg";
export function svg(tag, attrs = {}, ...children) {
    const el = document.createElementNS(SVG_NS, tag);
    apply(el, attrs, children);
    return el;
}
