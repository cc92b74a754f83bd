// Thin typed client for the authoring service. All correctness lives
// server-side; this module only moves JSON.

import type {
	BulletinDoc,
	ChoiceMap,
	FindingsResponse,
	MetaResponse,
	PhraseInfo,
	RenderResponse,
	SearchResponse,
	SelectionDoc,
	SlotsResponse,
} from './types';

export class ApiError extends Error {
	readonly code: string;
	readonly status: number;

	constructor(code: string, status: number, detail: string) {
		super(detail);
		this.code = code;
		this.status = status;
	}
}

async function parseError(response: Response): Promise<ApiError> {
	try {
		const body = await response.json();
		return new ApiError(body.code ?? 'UNKNOWN', response.status, body.detail ?? response.statusText);
	} catch {
		return new ApiError('UNKNOWN', response.status, response.statusText);
	}
}

export class ApiClient {
	constructor(readonly baseUrl: string, private readonly fetchFn: typeof fetch = fetch) {}

	private async request<T>(path: string, init?: RequestInit): Promise<T> {
		const response = await this.fetchFn(`${this.baseUrl}${path}`, {
			headers: { 'content-type': 'application/json' },
			...init,
		});
		if (!response.ok) {
			throw await parseError(response);
		}
		if (response.status === 204) {
			return undefined as T;
		}
		return (await response.json()) as T;
	}

	meta(): Promise<MetaResponse> {
		return this.request('/meta');
	}

	async phrases(): Promise<PhraseInfo[]> {
		const body = await this.request<{ phrases: PhraseInfo[] }>('/phrases');
		return body.phrases;
	}

	slots(phraseId: string, choices: ChoiceMap): Promise<SlotsResponse> {
		const selection = encodeURIComponent(JSON.stringify(choices));
		return this.request(`/phrases/${encodeURIComponent(phraseId)}/slots?selection=${selection}`);
	}

	render(selection: SelectionDoc, languages?: string[]): Promise<RenderResponse> {
		return this.request('/render', {
			method: 'POST',
			body: JSON.stringify({ selection, languages }),
		});
	}

	validateSelection(selection: SelectionDoc): Promise<FindingsResponse> {
		return this.request('/validate-selection', {
			method: 'POST',
			body: JSON.stringify({ selection }),
		});
	}

	search(query: string, limit = 20): Promise<SearchResponse> {
		return this.request(`/search?q=${encodeURIComponent(query)}&limit=${limit}`);
	}

	getBulletin(bulletinId: string): Promise<BulletinDoc> {
		return this.request(`/bulletins/${encodeURIComponent(bulletinId)}`);
	}

	createBulletin(editionTimestamp: string, bulletinId?: string): Promise<BulletinDoc> {
		return this.request('/bulletins', {
			method: 'POST',
			body: JSON.stringify({
				bulletin_id: bulletinId,
				edition_timestamp: editionTimestamp,
				descriptions: [],
			}),
		});
	}

	saveBulletin(bulletin: BulletinDoc): Promise<BulletinDoc> {
		return this.request(`/bulletins/${encodeURIComponent(bulletin.bulletin_id)}`, {
			method: 'PUT',
			body: JSON.stringify({
				edition_timestamp: bulletin.edition_timestamp,
				descriptions: bulletin.descriptions,
			}),
		});
	}

	publish(bulletinId: string): Promise<{ manifest: unknown; output_dir: string }> {
		return this.request(`/bulletins/${encodeURIComponent(bulletinId)}/publish`, {
			method: 'POST',
			body: '{}',
		});
	}
}
