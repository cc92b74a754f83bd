// Cascading pull-down editor: one <select> per open slot. Options display
// their source-language text; an editor hint (e.g. the noun a pronoun stands
// for) is appended to the menu label only — preview panes never see it.

import type { EditorSession } from './session';
import type { SlotInfo } from './types';

export const BLANK_VALUE = '';

export function optionLabel(label: string, hint: string | null): string {
	return hint ? `${label} (${hint})` : label;
}

export class SlotEditor {
	onChange: () => void = () => {};

	constructor(
		private readonly root: HTMLElement,
		private readonly session: EditorSession,
	) {}

	render(): void {
		this.root.textContent = '';
		const stale = new Set(this.session.stalePaths);
		for (const slot of this.session.slots) {
			this.root.appendChild(this.buildRow(slot, stale.has(slot.path)));
		}
		// Unresolvable picks (e.g. after a catalogue reload) leave no slot
		// tree; flag each offending path with a re-pick prompt instead.
		if (this.session.slots.length === 0 && stale.size > 0) {
			for (const path of stale) {
				const row = document.createElement('div');
				row.className = 'slot-row stale';
				row.dataset.path = path;
				row.textContent = `Option no longer exists at ${path} - please pick again.`;
				const button = document.createElement('button');
				button.textContent = 'Re-pick';
				button.addEventListener('click', () => {
					void this.session.choose(path, null).then(() => {
						this.render();
						this.onChange();
					});
				});
				row.appendChild(button);
				this.root.appendChild(row);
			}
		}
	}

	private buildRow(slot: SlotInfo, isStale: boolean): HTMLElement {
		const row = document.createElement('div');
		row.className = 'slot-row' + (isStale ? ' stale' : '');
		row.dataset.path = slot.path;
		row.dataset.depth = String(slot.depth);

		const label = document.createElement('label');
		label.textContent = slot.list_id;
		row.appendChild(label);

		const select = document.createElement('select');
		select.dataset.path = slot.path;

		const placeholder = document.createElement('option');
		placeholder.value = BLANK_VALUE;
		placeholder.textContent = isStale ? 'stale - pick again' : 'choose...';
		select.appendChild(placeholder);

		for (const option of slot.options) {
			const element = document.createElement('option');
			element.value = option.id;
			element.textContent = optionLabel(option.label, option.hint);
			if (slot.chosen === option.id) {
				element.selected = true;
			}
			select.appendChild(element);
		}
		if (slot.chosen === null || isStale) {
			placeholder.selected = true;
			row.classList.add('incomplete');
		}

		select.addEventListener('change', () => {
			void this.session
				.choose(slot.path, select.value === BLANK_VALUE ? null : select.value)
				.then(() => {
					this.render();
					this.onChange();
				});
		});
		row.appendChild(select);
		return row;
	}

	/** The select element for a slot path (used by tests and keyboard nav). */
	selectFor(path: string): HTMLSelectElement | null {
		for (const select of this.root.querySelectorAll('select')) {
			if (select.dataset.path === path) {
				return select as HTMLSelectElement;
			}
		}
		return null;
	}
}
