/** Payload shapes mirrored from the session service. */
export function emptyView() {
    return {
        session: null,
        reference: [],
        best: null,
        worst: null,
        pendingBo: new Map(),
        pendingOw: new Map(),
        consistency: null,
        results: null,
    };
}
