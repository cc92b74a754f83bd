import { describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api';
import { EditorSession } from '../src/session';
import { BASE_URL, WET_CHOICES, uniqueId } from './helpers';

function newSession(): EditorSession {
	return new EditorSession(new ApiClient(BASE_URL));
}

describe('editor session', () => {
	it('opens a phrase with its segment slots', async () => {
		const session = newSession();
		const slots = await session.openPhrase('p65');
		expect(slots.map((s) => s.path)).toEqual(['1', '2', '3', '4', '5']);
		expect(session.complete).toBe(false);
	});

	it('reveals child slots after picking an option with sub-segments', async () => {
		const session = newSession();
		await session.openPhrase('p65');
		await session.choose('3', 'o4');
		expect(session.slots.map((s) => s.path)).toContain('3/o4/an_steilen/1');
	});

	it('discards the subtree when a parent choice changes', async () => {
		const session = newSession();
		await session.openPhrase('p65');
		await session.choose('3', 'o4');
		await session.choose('3/o4/an_steilen/1', 'o2');
		expect(session.choices['3/o4/an_steilen/1']).toBe('o2');

		await session.choose('3', 'o1');
		expect(session.choices['3']).toBe('o1');
		expect(session.choices['3/o4/an_steilen/1']).toBeUndefined();

		await session.choose('3', null);
		expect(session.choices['3']).toBeUndefined();
	});

	it('is complete exactly when the service reports no errors', async () => {
		const session = newSession();
		await session.openPhrase('p65');
		for (const [path, optionId] of Object.entries(WET_CHOICES)) {
			expect(session.complete).toBe(false);
			await session.choose(path, optionId);
		}
		expect(session.complete).toBe(true);
		expect(session.findings.errors).toEqual([]);
	});

	it('flags stale picks after a catalogue change', async () => {
		const session = newSession();
		await session.loadSentence({
			kind: 'catalogue',
			phrase: 'p57',
			choices: { '1': 'o1', '2': 'o99', '3': 'o1', '4': 'o1' },
		});
		expect(session.complete).toBe(false);
		expect(session.stalePaths).toEqual(['2']);

		await session.choose('2', 'o2');
		expect(session.stalePaths).toEqual([]);
		expect(session.complete).toBe(true);
	});

	it('surfaces the pronoun warning for hinted options', async () => {
		const session = newSession();
		await session.loadSentence({
			kind: 'catalogue',
			phrase: 'p57',
			choices: { '1': 'o4', '2': 'o5', '3': 'o3', '4': 'o1' },
		});
		const codes = session.findings.warnings.map((w) => w.code);
		expect(codes).toContain('PRONOUN_CHECK');
	});

	it('refuses to add an incomplete sentence to the bulletin', async () => {
		const api = new ApiClient(BASE_URL);
		const session = new EditorSession(api);
		const draft = await api.createBulletin('2026-12-24T08:00:00+01:00', uniqueId('gate'));
		await session.openBulletin(draft.bulletin_id);

		await session.openPhrase('p65');
		await session.choose('1', 'o2');
		expect(session.complete).toBe(false);
		expect(() => session.addSentenceToBulletin('d1', 'Test')).toThrow(/incomplete/);

		for (const [path, optionId] of Object.entries(WET_CHOICES)) {
			await session.choose(path, optionId);
		}
		const sentence = session.addSentenceToBulletin('d1', 'Test');
		expect(sentence.kind).toBe('catalogue');
		expect(await session.saveBulletin()).toBe('saved');

		const stored = await api.getBulletin(draft.bulletin_id);
		expect(stored.descriptions[0].sentences).toHaveLength(1);
	});

	it('detects concurrent edits on save', async () => {
		const api = new ApiClient(BASE_URL);
		const draft = await api.createBulletin('2026-12-24T08:00:00+01:00', uniqueId('conflict'));

		const mine = new EditorSession(api);
		await mine.openBulletin(draft.bulletin_id);

		// someone else saves first
		const theirs = new EditorSession(api);
		await theirs.openBulletin(draft.bulletin_id);
		theirs.bulletin!.descriptions.push({ id: 'dx', region: 'x', sentences: [] });
		expect(await theirs.saveBulletin()).toBe('saved');

		mine.bulletin!.descriptions.push({ id: 'dy', region: 'y', sentences: [] });
		expect(await mine.saveBulletin()).toBe('conflict');

		// reload and retry
		await mine.openBulletin(draft.bulletin_id);
		mine.bulletin!.descriptions.push({ id: 'dy', region: 'y', sentences: [] });
		expect(await mine.saveBulletin()).toBe('saved');
	});
});
