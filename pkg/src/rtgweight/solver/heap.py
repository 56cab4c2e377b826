"""Binary min-heap over small integer ids with decrease-key by sift-up."""

from __future__ import annotations

from typing import Callable


class IndexedMinHeap:
    """Keys are compared with ``less``; ties go to the smaller id.

    Only decreases are supported, so a changed entry is only ever moved
    towards the root. ``operations`` counts push, decrease and pop calls.
    """

    def __init__(self, capacity: int, less: Callable[[object, object], bool]):
        self._less = less
        self._heap: list[int] = []
        self._pos = [-1] * capacity
        self._key: list[object] = [None] * capacity
        self.operations = 0

    def __len__(self) -> int:
        return len(self._heap)

    def __contains__(self, i: int) -> bool:
        return self._pos[i] >= 0

    def _before(self, i: int, j: int) -> bool:
        ki, kj = self._key[i], self._key[j]
        if self._less(ki, kj):
            return True
        if self._less(kj, ki):
            return False
        return i < j

    def push(self, i: int, key) -> None:
        self.operations += 1
        self._key[i] = key
        self._heap.append(i)
        self._pos[i] = len(self._heap) - 1
        self._sift_up(len(self._heap) - 1)

    def decrease(self, i: int, key) -> None:
        self.operations += 1
        self._key[i] = key
        self._sift_up(self._pos[i])

    def peek(self) -> tuple[int, object]:
        i = self._heap[0]
        return i, self._key[i]

    def pop(self) -> tuple[int, object]:
        self.operations += 1
        heap = self._heap
        top = heap[0]
        last = heap.pop()
        self._pos[top] = -1
        if heap:
            heap[0] = last
            self._pos[last] = 0
            self._sift_down(0)
        return top, self._key[top]

    def _sift_up(self, p: int) -> None:
        heap, pos = self._heap, self._pos
        item = heap[p]
        while p > 0:
            parent = (p - 1) >> 1
            if not self._before(item, heap[parent]):
                break
            heap[p] = heap[parent]
            pos[heap[p]] = p
            p = parent
        heap[p] = item
        pos[item] = p

    def _sift_down(self, p: int) -> None:
        heap, pos = self._heap, self._pos
        n = len(heap)
        item = heap[p]
        while True:
            c = 2 * p + 1
            if c >= n:
                break
            if c + 1 < n and self._before(heap[c + 1], heap[c]):
                c += 1
            if not self._before(heap[c], item):
                break
            heap[p] = heap[c]
            pos[heap[p]] = p
            p = c
        heap[p] = item
        pos[item] = p
