import { App } from "./app";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
const app = new App(root);
void app.loadBraid("1 2 1 2 1 2");
