// Live multi-language preview. Renders are debounced and the panes always
// show the service's /render output verbatim - the client never assembles
// sentence text itself.

import type { ApiClient } from './api';
import type { EditorSession } from './session';
import type { LanguageInfo } from './types';

export const DEBOUNCE_MS = 200;
export const INCOMPLETE_PLACEHOLDER = '… (incomplete)';

export class PreviewPanes {
	private panes = new Map<string, HTMLElement>();
	private warningsEl: HTMLElement;
	private timer: ReturnType<typeof setTimeout> | null = null;
	private generation = 0;

	constructor(
		private readonly root: HTMLElement,
		private readonly api: ApiClient,
		private readonly session: EditorSession,
		languages: LanguageInfo[],
	) {
		for (const language of languages) {
			const pane = document.createElement('div');
			pane.className = 'preview-pane';
			pane.dataset.language = language.code;

			const caption = document.createElement('h3');
			caption.textContent = language.source
				? `${language.code} (source)`
				: language.code;
			pane.appendChild(caption);

			const body = document.createElement('p');
			body.className = 'preview-text';
			pane.appendChild(body);

			this.root.appendChild(pane);
			this.panes.set(language.code, body);
		}
		this.warningsEl = document.createElement('div');
		this.warningsEl.className = 'preview-warnings';
		this.root.appendChild(this.warningsEl);
	}

	textFor(language: string): string {
		return this.panes.get(language)?.textContent ?? '';
	}

	/** Schedule a debounced refresh; rapid slot picks collapse to one call. */
	schedule(): void {
		if (this.timer !== null) {
			clearTimeout(this.timer);
		}
		this.timer = setTimeout(() => {
			this.timer = null;
			void this.refresh();
		}, DEBOUNCE_MS);
	}

	/** Render immediately (awaitable; used on phrase open and by tests). */
	async refresh(): Promise<void> {
		const generation = ++this.generation;
		const selection = this.session.selection;
		if (!selection || !this.session.complete) {
			this.showPlaceholder();
			this.showWarnings();
			return;
		}
		try {
			const rendered = await this.api.render(selection);
			if (generation !== this.generation) {
				return; // superseded by a newer render
			}
			for (const sentence of rendered.sentences) {
				const pane = this.panes.get(sentence.language);
				if (pane) {
					pane.textContent = sentence.text;
				}
			}
			this.showWarnings();
		} catch (error) {
			if (generation !== this.generation) {
				return;
			}
			const detail = error instanceof Error ? error.message : String(error);
			this.showPlaceholder(`render failed: ${detail}`);
		}
	}

	private showPlaceholder(text = INCOMPLETE_PLACEHOLDER): void {
		for (const pane of this.panes.values()) {
			pane.textContent = text;
		}
	}

	private showWarnings(): void {
		this.warningsEl.textContent = '';
		for (const warning of this.session.findings.warnings) {
			const line = document.createElement('p');
			line.className = `warning warning-${warning.code.toLowerCase()}`;
			line.textContent = `${warning.code}: ${warning.message} (at ${warning.path})`;
			this.warningsEl.appendChild(line);
		}
	}
}
