import { defineConfig } from 'vitest/config';

export default defineConfig({
	test: {
		environment: 'jsdom',
		globalSetup: './tests/serve.global.ts',
		testTimeout: 20_000,
		hookTimeout: 30_000,
	},
});
