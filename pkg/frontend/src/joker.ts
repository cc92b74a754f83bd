// Joker sentence entry: free text for situations the catalogue cannot
// express. The form only accepts once every language has text.

import type { JokerSentenceDoc, LanguageInfo } from './types';

export class JokerForm {
	onAccept: (joker: JokerSentenceDoc) => void = () => {};

	private fields = new Map<string, HTMLInputElement>();
	private button: HTMLButtonElement;

	constructor(root: HTMLElement, languages: LanguageInfo[]) {
		for (const language of languages) {
			const label = document.createElement('label');
			label.textContent = language.code;
			const input = document.createElement('input');
			input.dataset.language = language.code;
			input.addEventListener('input', () => this.update());
			label.appendChild(input);
			root.appendChild(label);
			this.fields.set(language.code, input);
		}
		this.button = document.createElement('button');
		this.button.textContent = 'Add joker sentence';
		this.button.disabled = true;
		this.button.addEventListener('click', () => {
			if (this.isComplete()) {
				this.onAccept(this.value());
			}
		});
		root.appendChild(this.button);
	}

	isComplete(): boolean {
		for (const input of this.fields.values()) {
			if (!input.value.trim()) {
				return false;
			}
		}
		return true;
	}

	value(): JokerSentenceDoc {
		const texts: Record<string, string> = {};
		for (const [code, input] of this.fields) {
			texts[code] = input.value.trim();
		}
		return { kind: 'joker', texts };
	}

	setText(language: string, text: string): void {
		const input = this.fields.get(language);
		if (input) {
			input.value = text;
			this.update();
		}
	}

	get acceptEnabled(): boolean {
		return !this.button.disabled;
	}

	private update(): void {
		this.button.disabled = !this.isComplete();
	}
}
