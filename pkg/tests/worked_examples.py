"""Small hand-built pages with known counts and categories, used as fixtures."""

from palf.count_store import MAX_COUNT, CountStore
from palf.corpus_io import Document
from palf.normalizer import hash_line

# (line, count, ends with punctuation)
QUILT_PAGE = [
    ("There are a lot of reasons ... who has an extensive tee shirt collection.", 1, True),
    ("However, working with ... challenges. But with ... very doable.", 1, True),
    ("T-SHIRT QUILTS", 284, False),
    ("Shhhh: Here's the big secret: diligent application ... interfacing.", 1, True),
    ("Cable tv also helps a lot here.", 1, True),
    ("This secret, ..., baby clothing, etc. ", 1, True),
    ("You will need:", 1316, False),
    ("A good iron with ... which mists water.", 1, True),
    ("A thin cotton press cloth (any clean piece of muslin will do).", 1, True),
]

# rows 7-11 are plain distinctive body lines
BAT_FILLER = [f"Filler paragraph number {w} about baseball bats." for w in
                 ("seven", "eight", "nine", "ten", "eleven")]

# (line, count, category)
BAT_PAGE = [
    ("Infographic", 7556, "r"),
    ("About", 3_215_635, "r"),
    ("Contact", 3_533_305, "r"),
    ("0", 2_194_233, "r"),
    ("Best Drop 3 Baseball Bat", 6, "y"),
    ("When you are purchasing ... across.If you want ... suits you well.", 1, "g"),
    *[(line, 1, "g") for line in BAT_FILLER],
    ("Drop three ... to wood bats. This is ... the bat.", 1, "g"),
    ("Numerical Difference", 1, "g"),
    ("For a baseball bat to be regarded ... stated of three.", 1, "g"),
    ("Handle", 1608, "r"),
    ("The handle of ... field. Choose ... strength. The ... time.", 1, "g"),
    ("Other Considerations", 391, "y"),
    ("Determine the diameter of the barrel", 1, "g"),
    ("Look at the weight of the bat", 1, "g"),
]
BAT_KEPT_ROWS = list(range(6, 20))  # 1-based rows PLD keeps

# (line, category)
BAT_GUIDE = [
    ("For a baseball bat to be regarded ... stated of three.", "g"),
    ("Handle", "r"),
    ("The handle of ... field. Choose ... strength. The ... time.", "g"),
    ("Other Considerations", "r"),
    ("Determine the diameter of the barrel", "r"),
    ("Look at the weight of the bat", "r"),
    ("Does the bat come with a warranty?", "g"),
]


def bat_document() -> Document:
    return Document([line for line, _, _ in BAT_PAGE], shard_id="bat-page", record_id="bat")


def bat_store() -> CountStore:
    store = CountStore(document_set="bat-page")
    for line, count, _ in BAT_PAGE:
        store.entries[hash_line(line)] = min(count, MAX_COUNT)
    return store


def guide_document() -> Document:
    return Document([line for line, _ in BAT_GUIDE], shard_id="bat-guide", record_id="guide")


def quilt_corpus() -> list[Document]:
    """A corpus whose document frequencies match the counts in QUILT_PAGE.

    The quilt page itself plus pages that repeat its two structural lines,
    some with different casing, each padded with unique lines.
    """
    docs = [Document([line for line, _, _ in QUILT_PAGE], record_id="quilt")]
    need = {line: count - 1 for line, count, _ in QUILT_PAGE if count > 1}
    variants = {"T-SHIRT QUILTS": ["T-Shirt Quilts", "t-shirt quilts", "T-SHIRT QUILTS"],
                "You will need:": ["You will need:", "YOU WILL NEED:", "You  will need:"]}
    i = 0
    while any(need.values()):
        lines = [f"Unique opening line for page {i}."]
        for line, left in need.items():
            if left:
                # the third variant of "You will need:" differs (double space) and must not count
                forms = [v for v in variants[line] if v != "You  will need:"]
                lines.append(forms[i % len(forms)])
                lines.append(forms[(i + 1) % len(forms)])  # repeat inside a page counts once
                need[line] = left - 1
        lines.append(f"Unique closing line for page {i}.")
        if i % 7 == 0:
            lines.append("You  will need:")
        docs.append(Document(lines, record_id=f"page{i}"))
        i += 1
    return docs
