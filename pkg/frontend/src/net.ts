// Thin WebSocket wrapper: connects, joins a seat, forwards parsed frames.
// Keeping the socket behind an interface lets tests feed frames straight
// into ViewState without a browser.

import { ClientMsg, parseServerMsg, ServerMsg } from "./protocol.js";

export interface GameSocket {
  send(msg: ClientMsg): void;
  close(): void;
}

export interface NetCallbacks {
  onMessage(msg: ServerMsg): void;
  onOpen?(): void;
  onClose?(): void;
}

/** Server address: ?server=host:port on the page URL, else same host, port 8000. */
export function serverUrl(locationSearch: string, locationHostname: string): string {
  const params = new URLSearchParams(locationSearch);
  const hostport = params.get("server") ?? `${locationHostname || "localhost"}:8000`;
  return `ws://${hostport}/game`;
}

export function connect(
  url: string,
  role: "red" | "blue" | "spectator",
  cb: NetCallbacks,
): GameSocket {
  const ws = new WebSocket(url);
  ws.onopen = () => {
    ws.send(JSON.stringify({ type: "join", role }));
    cb.onOpen?.();
  };
  ws.onmessage = (ev: MessageEvent) => {
    if (typeof ev.data !== "string") return;
    const msg = parseServerMsg(ev.data);
    if (msg) cb.onMessage(msg);
  };
  ws.onclose = () => cb.onClose?.();
  return {
    send(msg: ClientMsg) {
      if (ws.readyState === WebSocket.OPEN) ws.send(JSON.stringify(msg));
    },
    close() {
      ws.close();
    },
  };
}
