/**
 * Browser bootstrap: login form, then the workbench or the supervisor
 * dashboard depending on the role.  One active draft per tab; the server
 * lease stays the authority.
 */

import { WorkbenchClient, fetchTransport } from "./apiClient.js";
import { renderDashboard, renderWorkbench } from "./render.js";
import { loadDashboard } from "./supervisor.js";
import { loadWorkbench } from "./workbench.js";

async function start(): Promise<void> {
  const root = document.getElementById("app");
  if (root === null) return;
  const client = new WorkbenchClient(fetchTransport(""));

  root.innerHTML = `<form id="login">
    <input name="worker_id" placeholder="worker id">
    <input name="key" type="password" placeholder="key">
    <button type="submit">log in</button>
  </form>`;

  const form = document.getElementById("login") as HTMLFormElement;
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const session = await client.login(String(data.get("worker_id")),
      String(data.get("key")));
    if (session.role === "supervisor" || session.role === "admin") {
      const dashboard = await loadDashboard(client, session);
      root.innerHTML = renderDashboard(dashboard);
    } else {
      const state = await loadWorkbench(client, session);
      root.innerHTML = renderWorkbench(state);
    }
  });
}

start();
