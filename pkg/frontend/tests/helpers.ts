export const BASE_URL = 'http://127.0.0.1:8971';

// The hand-checked reference selection for the wet-avalanches phrase and its
// expected sentences (must match the service byte for byte).
export const WET_CHOICES: Record<string, string> = {
	'1': 'o2',
	'2': 'o1',
	'3': 'o4',
	'3/o4/an_steilen/1': 'o2',
	'4': 'o1',
	'5': 'o2',
	'5/o2/ziemlich/1': 'o3',
};

export async function waitFor(
	condition: () => boolean,
	timeoutMs = 5000,
	stepMs = 25,
): Promise<void> {
	const deadline = Date.now() + timeoutMs;
	while (Date.now() < deadline) {
		if (condition()) {
			return;
		}
		await new Promise((resolve) => setTimeout(resolve, stepMs));
	}
	throw new Error('condition not met in time');
}

export function uniqueId(prefix: string): string {
	return `${prefix}-${Date.now().toString(36)}-${Math.floor(Math.random() * 1e6).toString(36)}`;
}

export function pickOption(root: HTMLElement, path: string, optionId: string): void {
	const select = Array.from(root.querySelectorAll<HTMLSelectElement>('select')).find(
		(s) => s.dataset.path === path,
	);
	if (!select) {
		throw new Error(`no slot select for path ${path}`);
	}
	select.value = optionId;
	select.dispatchEvent(new Event('change', { bubbles: true }));
}
