// Editor wiring: phrase picker -> slot editor -> live preview, plus the
// add-to-bulletin gate. Everything renders through the service; the client
// holds no authoritative state.

import { ApiClient } from './api';
import { JokerForm } from './joker';
import { PreviewPanes } from './preview';
import { PhrasePicker } from './search';
import { EditorSession } from './session';
import { SlotEditor } from './slots';

export interface App {
	session: EditorSession;
	picker: PhrasePicker;
	slotEditor: SlotEditor;
	preview: PreviewPanes;
	joker: JokerForm;
	addButton: HTMLButtonElement;
	saveState: HTMLElement;
}

export async function createApp(root: HTMLElement, baseUrl: string): Promise<App> {
	const api = new ApiClient(baseUrl);
	const session = new EditorSession(api);
	const meta = await api.meta();

	root.innerHTML = `
		<header><h1>Bulletin editor</h1></header>
		<main>
			<section id="picker"><h2>Phrases</h2></section>
			<section id="slots"><h2>Sentence</h2></section>
			<section id="preview"><h2>Preview</h2></section>
			<section id="joker"><h2>Joker sentence</h2></section>
			<section id="bulletin">
				<h2>Bulletin</h2>
				<button id="add-sentence" disabled>Add to bulletin</button>
				<span id="save-state"></span>
			</section>
		</main>
	`;

	const picker = new PhrasePicker(root.querySelector('#picker') as HTMLElement, api);
	const slotEditor = new SlotEditor(root.querySelector('#slots') as HTMLElement, session);
	const preview = new PreviewPanes(
		root.querySelector('#preview') as HTMLElement,
		api,
		session,
		meta.languages,
	);
	const joker = new JokerForm(root.querySelector('#joker') as HTMLElement, meta.languages);
	const addButton = root.querySelector('#add-sentence') as HTMLButtonElement;
	const saveState = root.querySelector('#save-state') as HTMLElement;

	const syncGate = () => {
		addButton.disabled = !session.complete || session.bulletin === null;
	};

	picker.onPick = (phraseId) => {
		void session.openPhrase(phraseId).then(() => {
			slotEditor.render();
			syncGate();
			void preview.refresh();
		});
	};

	slotEditor.onChange = () => {
		syncGate();
		preview.schedule();
	};

	addButton.addEventListener('click', () => {
		if (addButton.disabled || !session.bulletin) {
			return;
		}
		session.addSentenceToBulletin('d1', 'Hauptgebiet');
		void session.saveBulletin().then((outcome) => {
			saveState.textContent =
				outcome === 'saved'
					? 'Saved.'
					: 'Draft changed elsewhere - reload before saving.';
		});
	});

	joker.onAccept = (sentence) => {
		if (!session.bulletin) {
			return;
		}
		session.bulletin.descriptions
			.at(-1)
			?.sentences.push(sentence);
		void session.saveBulletin();
	};

	await picker.load();
	return { session, picker, slotEditor, preview, joker, addButton, saveState };
}
