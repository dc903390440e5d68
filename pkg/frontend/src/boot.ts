/** Browser entry point: mount the explorer on #app. */

import { init } from "./main.js";

const mount = document.getElementById("app");
if (mount) {
  // a bootstrap failure already rendered the error banner
  init(mount).catch(() => undefined);
}
