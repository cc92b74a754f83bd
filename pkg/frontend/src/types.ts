// Payload types for the authoring service API.

export interface LanguageInfo {
	code: string;
	source: boolean;
}

export interface MetaResponse {
	catalogue_hash: string;
	languages: LanguageInfo[];
	phrase_count: number;
}

export interface PhraseInfo {
	phrase_id: string;
	number: number;
	title: string;
}

export interface SlotOption {
	id: string;
	label: string;
	hint: string | null;
}

export interface SlotInfo {
	path: string;
	list_id: string;
	depth: number;
	chosen: string | null;
	options: SlotOption[];
}

export interface SlotsResponse {
	phrase_id: string;
	slots: SlotInfo[];
}

export interface SentenceOut {
	language: string;
	text: string;
}

export interface RenderResponse {
	catalogue_hash: string;
	sentences: SentenceOut[];
}

export interface Finding {
	code: string;
	path: string;
	message: string;
}

export interface FindingsResponse {
	errors: Finding[];
	warnings: Finding[];
}

export interface SearchHit {
	phrase_id: string;
	number: number;
	score: number;
	matched_terms: string[];
}

export interface SearchResponse {
	hits: SearchHit[];
}

export type ChoiceMap = Record<string, string>;

export interface SelectionDoc {
	phrase: string;
	choices: ChoiceMap;
}

export interface CatalogueSentence {
	kind: 'catalogue';
	phrase: string;
	choices: ChoiceMap;
}

export interface JokerSentenceDoc {
	kind: 'joker';
	texts: Record<string, string>;
}

export type SentenceDoc = CatalogueSentence | JokerSentenceDoc;

export interface DescriptionDoc {
	id: string;
	region: string;
	sentences: SentenceDoc[];
}

export interface BulletinDoc {
	bulletin_id: string;
	edition_timestamp: string;
	catalogue_hash: string;
	status: 'draft' | 'published';
	descriptions: DescriptionDoc[];
}

export interface ProblemDetail {
	type: string;
	title: string;
	status: number;
	detail: string;
	code: string;
}
