// Browser bootstrap: same-origin API, vocabulary under <origin>/vocab#.

import { ApiClient } from "./api.js";
import { App } from "./app.js";

const origin = window.location.origin;
const app = new App({
    root: document.getElementById("app")!,
    api: new ApiClient(origin),
    win: window,
    vocabNamespace: origin + "/vocab#",
});
void app.start();
