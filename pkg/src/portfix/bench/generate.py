"""Seeded generator for synthetic codebase pairs with injected faults."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import InvalidFaultSpec
from ..index import index_texts
from ..lexer import tokenize
from .faults import DROP_CAST, PARAM_TYPE, RENAME, STRUCTURAL, FaultSpec, PortingCase, inject

HEADER = """\
#ifndef DEFS_H
#define DEFS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

typedef unsigned char char_u;

#define FAIL 0
#define OK 1
#define MAX_ITEMS 128
#define ALLOC_ONE(type) ((type *)malloc(sizeof(type)))
#define ALLOC_MULT(type, count) ((type *)malloc(sizeof(type) * (count)))
#define STRLEN(s) strlen((char *)(s))

typedef struct item_S {
  int id;
  long value;
  char_u *key;
  struct item_S *next;
} item_T;

typedef struct {
  item_T *first;
  int count;
} list_T;

typedef struct {
  char *data;
  int len;
  int cap;
} strbuf_T;

extern char e_invalid_argument_nr[];
extern char e_list_required[];
extern char e_item_not_found[];
extern char e_buffer_full[];
extern int p_verbose;

void *xmalloc(size_t size);
void semsg(const char *fmt, ...);
item_T *list_find_item(list_T *l, int id);
int list_append_item(list_T *l, item_T *item);
int list_len(list_T *l);
long item_get_value(item_T *item, int *error);
int item_compare(item_T *a, item_T *b);
char_u *vim_strsave(char_u *s);
void strbuf_init(strbuf_T *sb);
int strbuf_append(strbuf_T *sb, char_u *text);
int lookup_flag(char *name, int *found);
"""

HELPERS = """\
#include "defs.h"

char e_invalid_argument_nr[] = "E475: Invalid argument: %ld";
char e_list_required[] = "E714: List required";
char e_item_not_found[] = "E716: Key not present: %ld";
char e_buffer_full[] = "E1240: Buffer is full";
int p_verbose = 0;

void *xmalloc(size_t size)
{
  void *p = malloc(size);

  if (p == NULL) {
    abort();
  }
  return p;
}

void semsg(const char *fmt, ...)
{
  fputs(fmt, stderr);
}

item_T *list_find_item(list_T *l, int id)
{
  item_T *it;

  for (it = l->first; it != NULL; it = it->next) {
    if (it->id == id) {
      return it;
    }
  }
  return NULL;
}

int list_append_item(list_T *l, item_T *item)
{
  if (l->count >= MAX_ITEMS) {
    return FAIL;
  }
  item->next = l->first;
  l->first = item;
  l->count++;
  return OK;
}

int list_len(list_T *l)
{
  if (l == NULL) {
    return 0;
  }
  return l->count;
}

long item_get_value(item_T *item, int *error)
{
  if (item == NULL) {
    *error = true;
    return 0;
  }
  return item->value;
}

int item_compare(item_T *a, item_T *b)
{
  if (a->value == b->value) {
    return 0;
  }
  return a->value < b->value ? -1 : 1;
}

char_u *vim_strsave(char_u *s)
{
  size_t len = STRLEN(s) + 1;
  char_u *p = ALLOC_MULT(char_u, len);

  if (p != NULL) {
    memcpy(p, s, len);
  }
  return p;
}

void strbuf_init(strbuf_T *sb)
{
  sb->data = NULL;
  sb->len = 0;
  sb->cap = 0;
}

int strbuf_append(strbuf_T *sb, char_u *text)
{
  int n = (int)STRLEN(text);

  if (sb->len + n + 1 > sb->cap) {
    sb->cap = (sb->len + n + 1) * 2;
    sb->data = realloc(sb->data, (size_t)sb->cap);
  }
  memcpy(sb->data + sb->len, text, (size_t)n + 1);
  sb->len += n;
  return OK;
}

int lookup_flag(char *name, int *found)
{
  if (name == NULL || *name == '\\0') {
    *found = false;
    return 0;
  }
  *found = true;
  return (int)strlen(name);
}
"""

# snippet name -> (entities it uses, body lines); {n} is a per-use suffix,
# {k} a small constant and {w} a word
SNIPPETS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    "getval": (
        ("item_get_value",),
        (
            "int error{n} = false;",
            "long value{n} = item_get_value(it, &error{n});",
            "if (error{n}) {",
            "  return FAIL;",
            "}",
            "result += (int)value{n};",
        ),
    ),
    "flag": (
        ("lookup_flag", "e_invalid_argument_nr"),
        (
            "int found{n} = false;",
            "int flag{n} = lookup_flag(name, &found{n});",
            "if (!found{n}) {",
            "  semsg(e_invalid_argument_nr, (long)flag{n});",
            "  return FAIL;",
            "}",
        ),
    ),
    "strbuf": (
        ("strbuf_append",),
        (
            "strbuf_T sb{n};",
            "strbuf_init(&sb{n});",
            'strbuf_append(&sb{n}, (char_u *)"{w}");',
            "strbuf_append(&sb{n}, (char_u *)name);",
            "result += sb{n}.len;",
            "free(sb{n}.data);",
        ),
    ),
    "alloc": (
        ("ALLOC_ONE", "list_append_item"),
        (
            "item_T *copy{n} = ALLOC_ONE(item_T);",
            "copy{n}->id = it->id + {k};",
            "copy{n}->value = it->value;",
            "copy{n}->key = NULL;",
            "if (list_append_item(l, copy{n}) == FAIL) {",
            "  free(copy{n});",
            "  return FAIL;",
            "}",
        ),
    ),
    "mult": (
        ("ALLOC_MULT", "MAX_ITEMS"),
        (
            "long *vals{n} = ALLOC_MULT(long, MAX_ITEMS);",
            "vals{n}[0] = it->value;",
            "result += (int)vals{n}[0];",
            "free(vals{n});",
        ),
    ),
    "keylen": (
        ("STRLEN",),
        (
            "if (it->key != NULL && STRLEN(it->key) > {k}) {",
            "  result++;",
            "}",
        ),
    ),
    "verbose": (
        ("p_verbose", "e_list_required", "list_len"),
        (
            "if (p_verbose > {k}) {",
            "  semsg(e_list_required, (long)list_len(l));",
            "}",
        ),
    ),
    "save": (
        ("vim_strsave",),
        (
            "char_u *saved{n} = vim_strsave((char_u *)name);",
            "if (saved{n} != NULL) {",
            "  result += (int)saved{n}[0];",
            "  free(saved{n});",
            "}",
        ),
    ),
    "compare": (
        ("item_compare",),
        (
            "if (l->first != NULL && item_compare(it, l->first) == 0) {",
            "  result = OK;",
            "}",
        ),
    ),
    "full": (
        ("list_len", "MAX_ITEMS", "e_buffer_full"),
        (
            "if (list_len(l) >= MAX_ITEMS - {k}) {",
            "  semsg(e_buffer_full, (long)list_len(l));",
            "  return FAIL;",
            "}",
        ),
    ),
}

# fault menu: entity -> candidate faults
FAULT_MENU: Dict[str, Tuple[FaultSpec, ...]] = {
    "list_find_item": (FaultSpec(RENAME, "list_find_item", {"new_name": "tv_list_find"}),),
    "list_append_item": (FaultSpec(RENAME, "list_append_item", {"new_name": "tv_list_append_item"}),),
    "list_len": (FaultSpec(RENAME, "list_len", {"new_name": "tv_list_len"}),),
    "item_get_value": (
        FaultSpec(RENAME, "item_get_value", {"new_name": "tv_item_get_value"}),
        FaultSpec(PARAM_TYPE, "item_get_value", {"param": 2, "old_type": "int", "new_type": "bool"}),
    ),
    "item_compare": (FaultSpec(RENAME, "item_compare", {"new_name": "item_cmp"}),),
    "vim_strsave": (
        FaultSpec(RENAME, "vim_strsave", {"new_name": "xstrdup"}),
        FaultSpec(DROP_CAST, "vim_strsave", {"param": 1, "old_type": "char_u", "new_type": "char"}),
    ),
    "strbuf_append": (
        FaultSpec(RENAME, "strbuf_append", {"new_name": "ga_concat_str"}),
        FaultSpec(DROP_CAST, "strbuf_append", {"param": 2, "old_type": "char_u", "new_type": "char"}),
    ),
    "lookup_flag": (
        FaultSpec(RENAME, "lookup_flag", {"new_name": "find_option_flag"}),
        FaultSpec(PARAM_TYPE, "lookup_flag", {"param": 2, "old_type": "int", "new_type": "bool"}),
    ),
    "e_invalid_argument_nr": (FaultSpec(RENAME, "e_invalid_argument_nr", {"new_name": "e_invargNr"}),),
    "e_list_required": (FaultSpec(RENAME, "e_list_required", {"new_name": "e_listreq"}),),
    "e_item_not_found": (FaultSpec(RENAME, "e_item_not_found", {"new_name": "e_dictkey_nr"}),),
    "e_buffer_full": (FaultSpec(RENAME, "e_buffer_full", {"new_name": "e_buffer_is_full"}),),
    "p_verbose": (FaultSpec(RENAME, "p_verbose", {"new_name": "p_verbosity"}),),
    "MAX_ITEMS": (FaultSpec(RENAME, "MAX_ITEMS", {"new_name": "MAXITEMS"}),),
    "ALLOC_ONE": (FaultSpec(STRUCTURAL, "ALLOC_ONE", {"template": "xmalloc(sizeof($1))"}),),
    "ALLOC_MULT": (FaultSpec(STRUCTURAL, "ALLOC_MULT", {"template": "xmalloc(sizeof($1) * ($2))"}),),
    "STRLEN": (FaultSpec(STRUCTURAL, "STRLEN", {"template": "strlen((char *)($1))"}),),
}

VERBS = ("check", "update", "scan", "merge", "collect", "apply", "report", "sync", "store", "reset", "filter", "count")
NOUNS = ("items", "entry", "values", "keys", "buffer", "list", "flags", "names", "cache", "range", "marks", "tags")
WORDS = ("alpha", "beta", "gamma", "delta", "omega", "sigma", "kappa", "theta")

# fault kinds rotated over the generated cases; function renames are kept
# rare relative to the other type-2 kinds, as in real forks
PLAN = (
    (RENAME, "value"),
    (STRUCTURAL, None),
    (PARAM_TYPE, None),
    (RENAME, "function"),
    (DROP_CAST, None),
    (STRUCTURAL, None),
    (RENAME, "value"),
)

FUNCTION_ENTITIES = {
    "list_find_item", "list_append_item", "list_len", "item_get_value",
    "item_compare", "vim_strsave", "strbuf_append", "lookup_flag",
}


@dataclass(frozen=True)
class UserFunction:
    name: str
    lookup: bool  # starts with list_find_item instead of l->first
    snippets: Tuple[str, ...]
    ks: Tuple[int, ...]
    words: Tuple[str, ...]

    def entities(self, upto: Optional[int] = None) -> set:
        used = {"list_find_item", "e_item_not_found"} if self.lookup else set()
        for s in self.snippets[:upto]:
            used.update(SNIPPETS[s][0])
        return used

    def render(self, upto: Optional[int] = None) -> str:
        lines = [f"int {self.name}(list_T *l, int id, char *name)", "{"]
        if self.lookup:
            lines += [
                "  item_T *it = list_find_item(l, id);",
                "  int result = OK;",
                "",
                "  if (it == NULL) {",
                "    semsg(e_item_not_found, (long)id);",
                "    return FAIL;",
                "  }",
            ]
        else:
            lines += [
                "  item_T *it = l->first;",
                "  int result = OK;",
                "",
                "  if (it == NULL || name == NULL) {",
                "    return FAIL;",
                "  }",
            ]
        for n, s in enumerate(self.snippets[:upto], 1):
            body = SNIPPETS[s][1]
            for ln in body:
                ln = ln.replace("{n}", str(n)).replace("{k}", str(self.ks[n - 1])).replace("{w}", self.words[n - 1])
                lines.append("  " + ln)
        lines += ["  return result;", "}"]
        return "\n".join(lines)


def _user_function(rng: random.Random, name: str, must: Sequence[str] = ()) -> UserFunction:
    pool = [s for s in sorted(SNIPPETS) if s not in must]
    count = rng.randint(2, 3)
    chosen = list(must) + rng.sample(pool, max(0, count - len(must)))
    rng.shuffle(chosen)
    # the snippets a patch adds go last
    chosen = [s for s in chosen if s not in must] + list(must)
    ks = tuple(rng.randint(0, 9) for _ in chosen)
    words = tuple(rng.choice(WORDS) for _ in chosen)
    return UserFunction(name, rng.random() < 0.6, tuple(chosen), ks, words)


def _names(rng: random.Random, count: int) -> List[str]:
    combos = [f"{v}_{n}" for v in VERBS for n in NOUNS]
    return rng.sample(combos, count)


def build_world(rng: random.Random, n_users: int = 12) -> List[UserFunction]:
    """User functions such that every snippet is used by at least two of them."""
    users = [_user_function(rng, nm) for nm in _names(rng, n_users)]
    counts = {s: sum(s in u.snippets for u in users) for s in SNIPPETS}
    for s in sorted(SNIPPETS):
        k = 0
        while counts[s] < 2:
            u = users[k]
            if s not in u.snippets:
                users[k] = UserFunction(
                    u.name, u.lookup, u.snippets + (s,), u.ks + (rng.randint(0, 9),), u.words + (rng.choice(WORDS),)
                )
                counts[s] += 1
            k += 1
    return users


def render_codebase(users: Sequence[UserFunction], patched: Optional[str] = None) -> Dict[str, str]:
    protos = "".join(f"int {u.name}(list_T *l, int id, char *name);\n" for u in users)
    header = HEADER + protos + "\n#endif\n"
    body = '#include "defs.h"\n\n' + "\n\n".join(u.render() for u in users) + "\n"
    if patched is not None:
        body += "\n" + patched + "\n"
    return {"defs.h": header, "helpers.c": HELPERS, "users.c": body}


def _pick_faults(rng: random.Random, used: set, primary: Tuple[str, Optional[str]]) -> List[FaultSpec]:
    kind, flavour = primary
    menu = []
    for ent in sorted(used):
        for spec in FAULT_MENU.get(ent, ()):
            if spec.kind != kind:
                continue
            if kind == RENAME and flavour == "function" and ent not in FUNCTION_ENTITIES:
                continue
            if kind == RENAME and flavour == "value" and ent in FUNCTION_ENTITIES:
                continue
            menu.append(spec)
    if not menu:
        return []
    specs = [rng.choice(menu)]
    # occasionally a second, independent inconsistency
    if rng.random() < 0.35:
        others = [
            s
            for ent in sorted(used)
            for s in FAULT_MENU.get(ent, ())
            if s.identifier != specs[0].identifier and not (s.kind == RENAME and ent in FUNCTION_ENTITIES)
        ]
        if others:
            specs.append(rng.choice(others))
    return specs


_MUST = {
    PARAM_TYPE: ("getval", "flag"),
    DROP_CAST: ("strbuf", "save"),
    STRUCTURAL: ("alloc", "mult", "keylen"),
}


def generate_case(seed: int, index: int) -> PortingCase:
    """One synthetic porting case; retries deterministically until valid."""
    rng = random.Random(seed * 100003 + index)
    primary = PLAN[index % len(PLAN)]
    for _ in range(50):
        users = build_world(rng)
        name = _names(rng, len(users) + 1)[-1]
        while any(u.name == name for u in users):
            name = name + "_new"
        if primary[0] in _MUST:
            must = (rng.choice(_MUST[primary[0]]),)
        else:
            must = (rng.choice(sorted(SNIPPETS)),)
        patched = _user_function(rng, name, must)
        n_patch = len(must)
        pre = patched.render(upto=len(patched.snippets) - n_patch)
        used = patched.entities() - patched.entities(upto=len(patched.snippets) - n_patch)
        specs = _pick_faults(rng, used, primary)
        if not specs:
            continue
        texts = render_codebase(users, patched.render())
        base = index_texts(texts, root="<src>")
        try:
            return inject(base, specs, seed=seed, function=name, pre_patch=pre, name=f"synthetic_{index:03d}")
        except InvalidFaultSpec:
            continue
    raise InvalidFaultSpec(f"could not generate case {index} for seed {seed}")


def generate_suite(seed: int = 7, count: int = 42) -> List[PortingCase]:
    return [generate_case(seed, k) for k in range(count)]


def synthetic_corpus(count: int, seed: int = 0) -> Dict[str, str]:
    """A single codebase with ``count`` generated user functions."""
    rng = random.Random(seed)
    names = [f"{v}_{n}_{k}" for k in range(count // (len(VERBS) * len(NOUNS)) + 1) for v in VERBS for n in NOUNS]
    names = rng.sample(names, count)
    users = [_user_function(rng, nm) for nm in names]
    return render_codebase(users)


def perturb(text: str, rate: float, rng: random.Random) -> str:
    """Replace ``rate`` of the non-punctuation tokens with fresh identifiers.

    Braces and operators are kept so the result still parses as a function.
    """
    toks = [t for t in tokenize(text, directives=False) if t.kind != "punct"]
    count = int(rate * len(toks))
    edits = [(t.start, t.end, f"zz_{rng.randrange(10**6):06d}") for t in rng.sample(toks, count)]
    for start, end, new in sorted(edits, reverse=True):
        text = text[:start] + new + text[end:]
    return text
