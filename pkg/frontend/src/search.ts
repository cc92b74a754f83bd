// Phrase picker: ranked search over the source-language catalogue with the
// full numbered phrase list as the empty-query default. A failing service
// keeps the last results on screen behind a non-blocking banner.

import type { ApiClient } from './api';
import type { PhraseInfo } from './types';

export class PhrasePicker {
	onPick: (phraseId: string) => void = () => {};

	private allPhrases: PhraseInfo[] = [];
	private byId = new Map<string, PhraseInfo>();
	private listEl: HTMLUListElement;
	private bannerEl: HTMLElement;
	private inputEl: HTMLInputElement;

	constructor(private readonly root: HTMLElement, private readonly api: ApiClient) {
		this.inputEl = document.createElement('input');
		this.inputEl.type = 'search';
		this.inputEl.placeholder = 'Suche…';
		this.inputEl.addEventListener('input', () => {
			void this.query(this.inputEl.value);
		});
		this.root.appendChild(this.inputEl);

		this.bannerEl = document.createElement('div');
		this.bannerEl.className = 'banner';
		this.bannerEl.hidden = true;
		this.root.appendChild(this.bannerEl);

		this.listEl = document.createElement('ul');
		this.listEl.className = 'phrase-list';
		this.root.appendChild(this.listEl);
	}

	async load(): Promise<void> {
		this.allPhrases = await this.api.phrases();
		this.byId = new Map(this.allPhrases.map((p) => [p.phrase_id, p]));
		this.show(this.allPhrases);
	}

	async query(text: string): Promise<void> {
		const trimmed = text.trim();
		try {
			if (!trimmed) {
				this.show(this.allPhrases);
			} else {
				const result = await this.api.search(trimmed);
				this.show(
					result.hits
						.map((hit) => this.byId.get(hit.phrase_id))
						.filter((p): p is PhraseInfo => p !== undefined),
				);
			}
			this.bannerEl.hidden = true;
		} catch {
			// service unreachable: keep the previous results visible
			this.bannerEl.textContent = 'Suche momentan nicht erreichbar - letzte Treffer bleiben angezeigt.';
			this.bannerEl.hidden = false;
		}
	}

	phraseIds(): string[] {
		return Array.from(this.listEl.querySelectorAll('li')).map(
			(li) => li.dataset.phraseId ?? '',
		);
	}

	private show(phrases: PhraseInfo[]): void {
		this.listEl.textContent = '';
		for (const phrase of phrases) {
			const item = document.createElement('li');
			item.dataset.phraseId = phrase.phrase_id;
			item.textContent = `${phrase.number}: ${phrase.title}`;
			item.addEventListener('click', () => this.onPick(phrase.phrase_id));
			this.listEl.appendChild(item);
		}
	}
}
