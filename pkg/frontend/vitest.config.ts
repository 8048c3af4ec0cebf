import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      // the page origin must match the API server or happy-dom's fetch
      // rejects the requests as cross-origin
      happyDOM: { url: "http://127.0.0.1:8931" },
    },
    globalSetup: "./test/globalSetup.ts",
    include: ["test/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
