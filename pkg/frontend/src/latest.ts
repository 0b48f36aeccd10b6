// Latest-wins gate for overlapping requests. Each channel (build, flex,
// sample, ...) stamps outgoing requests with issue(); a response is applied
// only if accept() says its stamp is still the newest issued. No locking:
// single UI thread, resolution order does not matter.

export class Latest {
  private issued = 0;

  issue(): number {
    return ++this.issued;
  }

  accept(seq: number): boolean {
    return seq === this.issued;
  }
}
