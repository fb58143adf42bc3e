// Shapes of the exploration API payloads. Field names mirror the server's
// JSON exactly; the client never derives or recomputes any of these values.
export {};
