import { ApiClient } from "./api";
import { App } from "./app";

declare global {
  interface Window {
    AWTITE_API_BASE?: string;
  }
}

const root = document.getElementById("app");
if (root) {
  const api = new ApiClient(window.AWTITE_API_BASE ?? "");
  const app = new App(root, api);
  const rerender = () => void app.route(window.location.hash);
  window.addEventListener("hashchange", rerender);
  rerender();
}
