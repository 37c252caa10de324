/** Monotonic request ids: only the latest issued id is "current", so
 * responses that arrive after a newer request started are discarded. */

export class RequestSequencer {
  private latest = 0;

  next(): number {
    this.latest += 1;
    return this.latest;
  }

  isCurrent(id: number): boolean {
    return id === this.latest;
  }
}
