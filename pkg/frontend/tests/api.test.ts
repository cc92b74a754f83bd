import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api';
import { BASE_URL, WET_CHOICES, uniqueId } from './helpers';

const api = new ApiClient(BASE_URL);

describe('api client', () => {
	it('reads catalogue metadata', async () => {
		const meta = await api.meta();
		expect(meta.languages.map((l) => l.code)).toEqual(['de', 'en', 'fr', 'it']);
		expect(meta.languages[0].source).toBe(true);
		expect(meta.catalogue_hash).toMatch(/^[0-9a-f]{64}$/);
	});

	it('lists phrases ordered by number', async () => {
		const phrases = await api.phrases();
		const numbers = phrases.map((p) => p.number);
		expect(numbers).toEqual([...numbers].sort((a, b) => a - b));
		expect(phrases.find((p) => p.phrase_id === 'p65')?.title).toContain('Lawinen');
	});

	it('renders a complete selection in all languages', async () => {
		const rendered = await api.render({ phrase: 'p65', choices: WET_CHOICES });
		const byLang = Object.fromEntries(rendered.sentences.map((s) => [s.language, s.text]));
		expect(byLang['de']).toBe(
			'Nasse Lawinen können an sehr steilen Sonnenhängen gefährlich gross werden.',
		);
		expect(byLang['en']).toBe(
			'On very steep sunny slopes wet avalanches can reach dangerously large size.',
		);
	});

	it('maps problem details onto ApiError', async () => {
		const failure = api.render({ phrase: 'p65', choices: {} });
		await expect(failure).rejects.toBeInstanceOf(ApiError);
		await expect(failure).rejects.toMatchObject({
			code: 'INCOMPLETE_SELECTION',
			status: 422,
		});
	});

	it('searches with synonym agreement', async () => {
		const a = await api.search('Wiesenhänge');
		const b = await api.search('Grashänge');
		expect(a.hits[0].phrase_id).toBe(b.hits[0].phrase_id);
	});

	it('creates, saves and fetches draft bulletins', async () => {
		const draft = await api.createBulletin('2026-12-24T08:00:00+01:00', uniqueId('api'));
		expect(draft.status).toBe('draft');
		draft.descriptions.push({
			id: 'd1',
			region: 'Testgebiet',
			sentences: [{ kind: 'catalogue', phrase: 'p65', choices: WET_CHOICES }],
		});
		const stored = await api.saveBulletin(draft);
		expect(stored.descriptions).toHaveLength(1);
		const reloaded = await api.getBulletin(draft.bulletin_id);
		expect(reloaded).toEqual(stored);
	});
});
