// Editor session state. The service owns all correctness: the slot tree,
// validation findings and preview text are always fetched fresh, so the
// session here is just the author's in-progress picks plus dirty tracking.

import type { ApiClient } from './api';
import type {
	BulletinDoc,
	ChoiceMap,
	FindingsResponse,
	SelectionDoc,
	SentenceDoc,
	SlotInfo,
} from './types';

export interface SentenceState {
	selection: SelectionDoc | null;
	slots: SlotInfo[];
	findings: FindingsResponse;
	complete: boolean;
	stalePaths: string[];
}

export function emptyFindings(): FindingsResponse {
	return { errors: [], warnings: [] };
}

export class EditorSession {
	phraseId: string | null = null;
	choices: ChoiceMap = {};
	slots: SlotInfo[] = [];
	findings: FindingsResponse = emptyFindings();
	dirty = false;

	bulletin: BulletinDoc | null = null;
	private savedRevision = '';

	constructor(private readonly api: ApiClient) {}

	get selection(): SelectionDoc | null {
		if (!this.phraseId) {
			return null;
		}
		return { phrase: this.phraseId, choices: { ...this.choices } };
	}

	/** True when the service reported no validation errors for the selection. */
	get complete(): boolean {
		return this.phraseId !== null && this.findings.errors.length === 0;
	}

	get stalePaths(): string[] {
		return this.findings.errors
			.filter((f) => f.code === 'STALE_OPTION')
			.map((f) => f.path);
	}

	async openPhrase(phraseId: string): Promise<SlotInfo[]> {
		this.phraseId = phraseId;
		this.choices = {};
		this.dirty = false;
		await this.refresh();
		return this.slots;
	}

	/** Record a pick; clearing or changing a parent discards its subtree. */
	async choose(path: string, optionId: string | null): Promise<SlotInfo[]> {
		if (!this.phraseId) {
			throw new Error('no phrase selected');
		}
		const prefix = `${path}/`;
		for (const existing of Object.keys(this.choices)) {
			if (existing === path || existing.startsWith(prefix)) {
				delete this.choices[existing];
			}
		}
		if (optionId !== null && optionId !== '') {
			this.choices[path] = optionId;
		}
		this.dirty = true;
		await this.refresh();
		return this.slots;
	}

	/** Re-fetch the slot tree and findings for the current picks. */
	async refresh(): Promise<void> {
		if (!this.phraseId) {
			this.slots = [];
			this.findings = emptyFindings();
			return;
		}
		const selection = { phrase: this.phraseId, choices: this.choices };
		try {
			const tree = await this.api.slots(this.phraseId, this.choices);
			this.slots = tree.slots;
			this.findings = await this.api.validateSelection(selection);
		} catch (error) {
			// A stale pick makes the slot tree unresolvable; keep the findings
			// so the slot editor can flag the offending paths for a re-pick.
			this.slots = [];
			this.findings = await this.api.validateSelection(selection);
		}
	}

	/** Load a sentence copied from an existing bulletin into the editor. */
	async loadSentence(sentence: SentenceDoc): Promise<FindingsResponse> {
		if (sentence.kind !== 'catalogue') {
			throw new Error('only catalogue sentences can be edited');
		}
		this.phraseId = sentence.phrase;
		this.choices = { ...sentence.choices };
		this.dirty = false;
		await this.refresh();
		return this.findings;
	}

	// -- bulletin handling ----------------------------------------------------

	async openBulletin(bulletinId: string): Promise<BulletinDoc> {
		this.bulletin = await this.api.getBulletin(bulletinId);
		this.savedRevision = JSON.stringify(this.bulletin.descriptions);
		return this.bulletin;
	}

	/**
	 * Append the current sentence to a description of the open draft.
	 * Refuses while the selection has validation errors.
	 */
	addSentenceToBulletin(descriptionId: string, region: string): SentenceDoc {
		if (!this.bulletin) {
			throw new Error('no bulletin open');
		}
		if (!this.phraseId || !this.complete) {
			throw new Error('selection is incomplete');
		}
		const sentence: SentenceDoc = {
			kind: 'catalogue',
			phrase: this.phraseId,
			choices: { ...this.choices },
		};
		let description = this.bulletin.descriptions.find((d) => d.id === descriptionId);
		if (!description) {
			description = { id: descriptionId, region, sentences: [] };
			this.bulletin.descriptions.push(description);
		}
		description.sentences.push(sentence);
		this.dirty = true;
		return sentence;
	}

	/**
	 * Save the draft. Optimistic concurrency: if the stored draft moved on
	 * since it was opened, nothing is written and the caller must reload.
	 */
	async saveBulletin(): Promise<'saved' | 'conflict'> {
		if (!this.bulletin) {
			throw new Error('no bulletin open');
		}
		const current = await this.api.getBulletin(this.bulletin.bulletin_id);
		if (JSON.stringify(current.descriptions) !== this.savedRevision) {
			return 'conflict';
		}
		const stored = await this.api.saveBulletin(this.bulletin);
		this.bulletin = stored;
		this.savedRevision = JSON.stringify(stored.descriptions);
		this.dirty = false;
		return 'saved';
	}
}
