import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { Transport, TransportResponse } from "../src/apiClient.js";

export interface Fixture {
  name: string;
  method: "GET" | "POST";
  path: string;
  request_body: unknown | null;
  status: number;
  response: unknown;
}

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixtures(): Fixture[] {
  const raw = readFileSync(join(here, "..", "fixtures", "api-fixtures.json"), "utf-8");
  return (JSON.parse(raw) as { fixtures: Fixture[] }).fixtures;
}

export function fixtureByName(name: string): Fixture {
  const fixture = loadFixtures().find((f) => f.name === name);
  if (fixture === undefined) throw new Error(`no fixture named ${name}`);
  return fixture;
}

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown | null;
}

/**
 * Transport replaying a scripted list of fixtures in order; records every
 * call so tests can assert the client hit the documented endpoints with
 * the documented bodies.
 */
export function scriptedTransport(script: Fixture[]):
    { transport: Transport; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  let cursor = 0;
  const transport: Transport = async (method, path, body): Promise<TransportResponse> => {
    const expected = script[cursor];
    if (expected === undefined) {
      throw new Error(`unexpected call ${method} ${path}; script exhausted`);
    }
    cursor += 1;
    calls.push({ method, path, body });
    if (method !== expected.method || path !== expected.path) {
      throw new Error(`call ${method} ${path} does not match scripted ` +
        `${expected.method} ${expected.path} (${expected.name})`);
    }
    return { status: expected.status, body: expected.response };
  };
  return { transport, calls };
}

function canonical(value: unknown): unknown {
  if (Array.isArray(value)) return value.map(canonical);
  if (value !== null && typeof value === "object") {
    return Object.fromEntries(Object.entries(value as Record<string, unknown>)
      .filter(([, v]) => v !== undefined)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0))
      .map(([k, v]) => [k, canonical(v)]));
  }
  return value;
}

/** Key-order-insensitive equality, dropping undefined like the wire does. */
export function wireEqual(a: unknown, b: unknown): boolean {
  return JSON.stringify(canonical(a ?? null)) === JSON.stringify(canonical(b ?? null));
}
