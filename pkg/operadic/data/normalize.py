from functools import lru_cache


@lru_cache(2**8)
def to_tag(name: str) -> str:
    """Converts an operad name to its tag: "Lie" -> "lie", "As" or "Ass" -> "asc".
    :param name: The name to convert.
    :type name: str
    :return: The corresponding tag.
    :rtype: str
    """
    tag = "".join(char for char in name if char.isalnum()).lower()
    return {"as": "asc", "ass": "asc", "assoc": "asc", "comm": "com"}.get(tag, tag)
