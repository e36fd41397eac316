// Debounced live-correction driver.
//
// Slider drags fire many input events; requests are debounced to at most
// one per DEBOUNCE_MS and any in-flight request is aborted when a newer
// state arrives, so a stale response can never overwrite a fresh panel.

export const DEBOUNCE_MS = 150;

type Task<S, R> = (state: S, signal: AbortSignal) => Promise<R>;

export class LiveRequester<S, R> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;
  private generation = 0;

  constructor(
    private readonly task: Task<S, R>,
    private readonly onResult: (result: R) => void,
    private readonly onError: (error: unknown) => void,
    private readonly delay: number = DEBOUNCE_MS,
  ) {}

  request(state: S): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(state);
    }, this.delay);
  }

  // bypass the debounce window (initial load, explicit submit)
  requestNow(state: S): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    return this.fire(state);
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.controller?.abort();
  }

  private async fire(state: S): Promise<void> {
    this.controller?.abort();
    this.controller = new AbortController();
    const generation = ++this.generation;
    try {
      const result = await this.task(state, this.controller.signal);
      if (generation === this.generation) this.onResult(result);
    } catch (error) {
      if (error instanceof DOMException && error.name === 'AbortError') return;
      if (generation === this.generation) this.onError(error);
    }
  }
}
