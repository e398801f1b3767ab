// Book chapters compile as doc-tests so the guide stays in sync with the
// library. Each chapter of `book/src` is attached as module documentation.
