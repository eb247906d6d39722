# src/metrics/blocking.py


def block_slices(n_items: int, n_blocks: int) -> list[slice]:
    """
    Splits item indices 0..n_items-1 into contiguous blocks of near-equal size.
    The first n_items % n_blocks blocks carry one extra item.
    """
    if n_items < 0:
        raise ValueError(f"block_slices: n_items must be >= 0, got {n_items}.")
    if n_blocks < 1:
        raise ValueError(f"block_slices: n_blocks must be >= 1, got {n_blocks}.")
    if n_items == 0:
        return []

    n_blocks = min(n_blocks, n_items)
    base_size, remainder = divmod(n_items, n_blocks)

    blocks = []
    current_idx = 0
    while current_idx < n_items:
        size = base_size + (1 if len(blocks) < remainder else 0)
        blocks.append(slice(current_idx, current_idx + size))
        current_idx += size
    return blocks
