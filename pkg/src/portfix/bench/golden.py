"""Hand-written golden cases: a script-info lookup ported across forks, and an
allocation macro that the target codebase expresses through a function."""
from __future__ import annotations

# ---------------------------------------------------------------------------
# script-info lookup: two renames, a dropped cast and a bool parameter

SCRIPTINFO_SRC = {
    "defs.h": """\
#ifndef DEFS_H
#define DEFS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdlib.h>
#include <string.h>

typedef unsigned char char_u;
typedef long varnumber_T;
typedef int scid_T;

#define VAR_NUMBER 1
#define VAR_STRING 2
#define VAR_DICT 3
#define FAIL 0
#define OK 1

typedef struct dict_S dict_T;

typedef struct {
  int v_type;
  union {
    varnumber_T v_number;
    char_u *v_string;
    dict_T *v_dict;
  } vval;
} typval_T;

typedef struct {
  typval_T di_tv;
  char_u *di_key;
} dictitem_T;

struct dict_S {
  dictitem_T *dv_items;
  int dv_count;
};

extern char e_invalid_value_for_argument_str_str[];
extern char e_dictionary_required[];
extern int script_count;

void semsg(const char *fmt, ...);
void emsg(const char *msg);
dictitem_T *dict_find(dict_T *d, char_u *key, int len);
varnumber_T tv_get_number(typval_T *varp);
varnumber_T tv_get_number_chk(typval_T *varp, int *denote);
char_u *tv_get_string(typval_T *varp);
varnumber_T dict_get_number(dict_T *d, char *key);
char_u *dict_get_string(dict_T *d, char *key, int save);
int check_script_id(typval_T *argvars);
void f_getscriptinfo(typval_T *argvars, typval_T *rettv);

#endif
""",
    "message.c": """\
#include <stdarg.h>
#include <stdio.h>
#include "defs.h"

char e_invalid_value_for_argument_str_str[] = "E475: Invalid value for argument %s: %s";
char e_dictionary_required[] = "E715: Dictionary required";

void semsg(const char *fmt, ...)
{
  va_list ap;

  va_start(ap, fmt);
  vfprintf(stderr, fmt, ap);
  va_end(ap);
}

void emsg(const char *msg)
{
  fputs(msg, stderr);
}
""",
    "typval.c": """\
#include "defs.h"

dictitem_T *dict_find(dict_T *d, char_u *key, int len)
{
  int i;

  if (d == NULL) {
    return NULL;
  }
  for (i = 0; i < d->dv_count; i++) {
    if (strcmp((char *)d->dv_items[i].di_key, (char *)key) == 0) {
      return &d->dv_items[i];
    }
  }
  return NULL;
}

varnumber_T tv_get_number(typval_T *varp)
{
  int error = false;

  return tv_get_number_chk(varp, &error);
}

varnumber_T tv_get_number_chk(typval_T *varp, int *denote)
{
  if (varp->v_type == VAR_NUMBER) {
    return varp->vval.v_number;
  }
  if (denote != NULL) {
    *denote = true;
  }
  return 0;
}

char_u *tv_get_string(typval_T *varp)
{
  if (varp->v_type == VAR_STRING) {
    return varp->vval.v_string;
  }
  return (char_u *)"";
}

varnumber_T dict_get_number(dict_T *d, char *key)
{
  dictitem_T *di;

  di = dict_find(d, (char_u *)key, -1);
  if (di == NULL) {
    return 0;
  }
  return tv_get_number(&di->di_tv);
}

char_u *dict_get_string(dict_T *d, char *key, int save)
{
  dictitem_T *di;
  char_u *s;

  di = dict_find(d, (char_u *)key, -1);
  if (di == NULL) {
    return NULL;
  }
  s = tv_get_string(&di->di_tv);
  if (save && s != NULL) {
    s = (char_u *)strdup((char *)s);
  }
  return s;
}
""",
    "scriptfile.c": """\
#include "defs.h"

int script_count = 0;

int check_script_id(typval_T *argvars)
{
  varnumber_T id;

  if (argvars[0].v_type != VAR_NUMBER) {
    emsg(e_dictionary_required);
    return FAIL;
  }
  id = argvars[0].vval.v_number;
  if (id <= 0 || id > script_count) {
    semsg(e_invalid_value_for_argument_str_str, "id", tv_get_string(&argvars[0]));
    return FAIL;
  }
  return OK;
}

void f_getscriptinfo(typval_T *argvars, typval_T *rettv)
{
  scid_T sid = -1;
  char_u *pat = NULL;
  int filterpat = false;

  rettv->v_type = VAR_NUMBER;
  rettv->vval.v_number = 0;

  if (argvars[0].v_type == VAR_DICT) {
    dictitem_T *sid_di = dict_find(argvars[0].vval.v_dict, (char_u *)"sid", -1);
    if (sid_di != NULL) {
      int error = false;
      sid = (int)tv_get_number_chk(&sid_di->di_tv, &error);
      if (error) {
        return;
      }
      if (sid <= 0) {
        semsg(e_invalid_value_for_argument_str_str, "sid", tv_get_string(&sid_di->di_tv));
        return;
      }
    } else {
      pat = dict_get_string(argvars[0].vval.v_dict, "name", true);
      if (pat != NULL) {
        filterpat = true;
      }
    }
  }

  rettv->vval.v_number = sid + filterpat;
}
""",
}

SCRIPTINFO_TGT = {
    "defs.h": """\
#ifndef DEFS_H
#define DEFS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdlib.h>
#include <string.h>

typedef unsigned char char_u;
typedef long varnumber_T;
typedef int scid_T;

#define VAR_NUMBER 1
#define VAR_STRING 2
#define VAR_DICT 3
#define FAIL 0
#define OK 1

typedef struct dict_S dict_T;

typedef struct {
  int v_type;
  union {
    varnumber_T v_number;
    char *v_string;
    dict_T *v_dict;
  } vval;
} typval_T;

typedef struct {
  typval_T di_tv;
  char *di_key;
} dictitem_T;

struct dict_S {
  dictitem_T *dv_items;
  int dv_count;
};

extern const char e_invargNval[];
extern const char e_dictreq[];
extern int script_count;

void semsg(const char *fmt, ...);
void emsg(const char *msg);
dictitem_T *tv_dict_find(const dict_T *d, const char *key, ptrdiff_t len);
varnumber_T tv_get_number(const typval_T *tv);
varnumber_T tv_get_number_chk(const typval_T *tv, bool *const ret_error);
const char *tv_get_string(const typval_T *tv);
varnumber_T tv_dict_get_number(const dict_T *d, const char *key);
char *tv_dict_get_string(const dict_T *d, const char *key, bool save);
int check_script_id(typval_T *argvars);
void f_getscriptinfo(typval_T *argvars, typval_T *rettv);

#endif
""",
    "message.c": """\
#include <stdarg.h>
#include <stdio.h>
#include "defs.h"

const char e_invargNval[] = "E475: Invalid value for argument %s: %s";
const char e_dictreq[] = "E715: Dictionary required";

void semsg(const char *fmt, ...)
{
  va_list ap;

  va_start(ap, fmt);
  vfprintf(stderr, fmt, ap);
  va_end(ap);
}

void emsg(const char *msg)
{
  fputs(msg, stderr);
}
""",
    "typval.c": """\
#include "defs.h"

dictitem_T *tv_dict_find(const dict_T *d, const char *key, ptrdiff_t len)
{
  int i;

  if (d == NULL) {
    return NULL;
  }
  for (i = 0; i < d->dv_count; i++) {
    if (strcmp(d->dv_items[i].di_key, key) == 0) {
      return &d->dv_items[i];
    }
  }
  return NULL;
}

varnumber_T tv_get_number(const typval_T *tv)
{
  bool error = false;

  return tv_get_number_chk(tv, &error);
}

varnumber_T tv_get_number_chk(const typval_T *tv, bool *const ret_error)
{
  if (tv->v_type == VAR_NUMBER) {
    return tv->vval.v_number;
  }
  if (ret_error != NULL) {
    *ret_error = true;
  }
  return 0;
}

const char *tv_get_string(const typval_T *tv)
{
  if (tv->v_type == VAR_STRING) {
    return tv->vval.v_string;
  }
  return "";
}

varnumber_T tv_dict_get_number(const dict_T *d, const char *key)
{
  dictitem_T *di;

  di = tv_dict_find(d, key, -1);
  if (di == NULL) {
    return 0;
  }
  return tv_get_number(&di->di_tv);
}

char *tv_dict_get_string(const dict_T *d, const char *key, bool save)
{
  dictitem_T *di;
  const char *s;

  di = tv_dict_find(d, key, -1);
  if (di == NULL) {
    return NULL;
  }
  s = tv_get_string(&di->di_tv);
  if (save && s != NULL) {
    return strdup(s);
  }
  return (char *)s;
}
""",
    "scriptfile.c": """\
#include "defs.h"

int script_count = 0;

int check_script_id(typval_T *argvars)
{
  varnumber_T id;

  if (argvars[0].v_type != VAR_NUMBER) {
    emsg(e_dictreq);
    return FAIL;
  }
  id = argvars[0].vval.v_number;
  if (id <= 0 || id > script_count) {
    semsg(e_invargNval, "id", tv_get_string(&argvars[0]));
    return FAIL;
  }
  return OK;
}

void f_getscriptinfo(typval_T *argvars, typval_T *rettv)
{
  scid_T sid = -1;
  char *pat = NULL;
  int filterpat = false;

  rettv->v_type = VAR_NUMBER;
  rettv->vval.v_number = 0;

  if (argvars[0].v_type == VAR_DICT) {
    sid = (scid_T)tv_dict_get_number(argvars[0].vval.v_dict, "sid");
    if (sid == -1) {
      pat = tv_dict_get_string(argvars[0].vval.v_dict, "name", true);
      if (pat != NULL) {
        filterpat = true;
      }
    }
  }

  rettv->vval.v_number = sid + filterpat;
}
""",
}

# the patch as an automated porting tool leaves it: context already in the
# target's vocabulary, new lines still in the source's
SCRIPTINFO_PORTED = """\
void f_getscriptinfo(typval_T *argvars, typval_T *rettv)
{
  scid_T sid = -1;
  char *pat = NULL;
  int filterpat = false;

  rettv->v_type = VAR_NUMBER;
  rettv->vval.v_number = 0;

  if (argvars[0].v_type == VAR_DICT) {
    dictitem_T *sid_di = dict_find(argvars[0].vval.v_dict, (char_u *)"sid", -1);
    if (sid_di != NULL) {
      int error = false;
      sid = (int)tv_get_number_chk(&sid_di->di_tv, &error);
      if (error) {
        return;
      }
      if (sid <= 0) {
        semsg(e_invalid_value_for_argument_str_str, "sid", tv_get_string(&sid_di->di_tv));
        return;
      }
    } else {
      pat = tv_dict_get_string(argvars[0].vval.v_dict, "name", true);
      if (pat != NULL) {
        filterpat = true;
      }
    }
  }

  rettv->vval.v_number = sid + filterpat;
}"""

SCRIPTINFO_TRUTH = """\
void f_getscriptinfo(typval_T *argvars, typval_T *rettv)
{
  scid_T sid = -1;
  char *pat = NULL;
  int filterpat = false;

  rettv->v_type = VAR_NUMBER;
  rettv->vval.v_number = 0;

  if (argvars[0].v_type == VAR_DICT) {
    dictitem_T *sid_di = tv_dict_find(argvars[0].vval.v_dict, "sid", -1);
    if (sid_di != NULL) {
      bool error = false;
      sid = (int)tv_get_number_chk(&sid_di->di_tv, &error);
      if (error) {
        return;
      }
      if (sid <= 0) {
        semsg(e_invargNval, "sid", tv_get_string(&sid_di->di_tv));
        return;
      }
    } else {
      pat = tv_dict_get_string(argvars[0].vval.v_dict, "name", true);
      if (pat != NULL) {
        filterpat = true;
      }
    }
  }

  rettv->vval.v_number = sid + filterpat;
}"""

SCRIPTINFO_FAULTS = [
    {
        "kind": "rename_identifier",
        "identifier": "dict_find",
        "details": {"new_name": "tv_dict_find"},
        "lines": [10],
        "subjects": ["dict_find"],
    },
    {
        "kind": "drop_cast_need",
        "identifier": "dict_find",
        "details": {"param": 2, "old_type": "char_u", "new_type": "char"},
        "lines": [10],
        "subjects": ["tv_dict_find"],
    },
    {
        "kind": "change_param_type",
        "identifier": "tv_get_number_chk",
        "details": {"param": 2, "old_type": "int", "new_type": "bool"},
        "lines": [12],
        "subjects": ["tv_get_number_chk"],
    },
    {
        "kind": "rename_identifier",
        "identifier": "e_invalid_value_for_argument_str_str",
        "details": {"new_name": "e_invargNval"},
        "lines": [18],
        "subjects": ["e_invalid_value_for_argument_str_str"],
    },
]

# ---------------------------------------------------------------------------
# allocation macro replaced by a function call

ALLOC_SRC = {
    "findfile.h": """\
#ifndef FINDFILE_H
#define FINDFILE_H

#include <stdlib.h>
#include <string.h>

typedef unsigned char char_u;

#define ALLOC_ONE(type) ((type *)malloc(sizeof(type)))

typedef struct ff_stack {
  struct ff_stack *ffs_prev;
  char_u *ffs_fix_path;
  char_u *ffs_wc_path;
  char_u **ffs_filearray;
  int ffs_filearray_size;
  int ffs_filearray_cur;
  int ffs_stage;
  int ffs_level;
  int ffs_star_star_empty;
} ff_stack_T;

typedef struct ff_visited {
  struct ff_visited *ffv_next;
  char_u *ffv_wc_path;
  char_u *ffv_fname;
} ff_visited_T;

char_u *vim_strsave(char_u *string);
void vim_free(void *x);
ff_stack_T *ff_create_stack_element(char_u *fix_part, char_u *wc_part, int level, int star_star_empty);
void ff_free_stack_element(ff_stack_T *stack_ptr);
ff_visited_T *ff_create_visited(char_u *fname, char_u *wc_path);

#endif
""",
    "misc.c": """\
#include "findfile.h"

char_u *vim_strsave(char_u *string)
{
  size_t len = strlen((char *)string) + 1;
  char_u *p = malloc(len);

  if (p != NULL) {
    memcpy(p, string, len);
  }
  return p;
}

void vim_free(void *x)
{
  if (x != NULL) {
    free(x);
  }
}
""",
    "findfile.c": """\
#include "findfile.h"

ff_stack_T *ff_create_stack_element(char_u *fix_part, char_u *wc_part, int level, int star_star_empty)
{
  ff_stack_T *new = ALLOC_ONE(ff_stack_T);

  if (new == NULL) {
    return NULL;
  }
  new->ffs_prev = NULL;
  new->ffs_filearray = NULL;
  new->ffs_filearray_size = 0;
  new->ffs_filearray_cur = 0;
  new->ffs_stage = 0;
  new->ffs_level = level;
  new->ffs_star_star_empty = star_star_empty;

  if (fix_part == NULL) {
    fix_part = (char_u *)"";
  }
  new->ffs_fix_path = vim_strsave(fix_part);

  if (wc_part == NULL) {
    wc_part = (char_u *)"";
  }
  new->ffs_wc_path = vim_strsave(wc_part);

  return new;
}

void ff_free_stack_element(ff_stack_T *stack_ptr)
{
  if (stack_ptr == NULL) {
    return;
  }
  vim_free(stack_ptr->ffs_fix_path);
  vim_free(stack_ptr->ffs_wc_path);
  vim_free(stack_ptr);
}

ff_visited_T *ff_create_visited(char_u *fname, char_u *wc_path)
{
  ff_visited_T *vp = ALLOC_ONE(ff_visited_T);

  vp->ffv_next = NULL;
  vp->ffv_fname = vim_strsave(fname);
  vp->ffv_wc_path = wc_path == NULL ? NULL : vim_strsave(wc_path);
  return vp;
}
""",
}

ALLOC_TGT = {
    "findfile.h": """\
#ifndef FINDFILE_H
#define FINDFILE_H

#include <stdlib.h>
#include <string.h>

typedef unsigned char char_u;

typedef struct ff_stack {
  struct ff_stack *ffs_prev;
  char *ffs_fix_path;
  char *ffs_wc_path;
  char **ffs_filearray;
  int ffs_filearray_size;
  int ffs_filearray_cur;
  int ffs_stage;
  int ffs_level;
  int ffs_star_star_empty;
} ff_stack_T;

typedef struct ff_visited {
  struct ff_visited *ffv_next;
  char *ffv_wc_path;
  char *ffv_fname;
} ff_visited_T;

void *xmalloc(size_t size);
char *xstrdup(const char *str);
void xfree(void *ptr);
ff_stack_T *ff_create_stack_element(char *fix_part, char *wc_part, int level, int star_star_empty);
void ff_free_stack_element(ff_stack_T *stack_ptr);
ff_visited_T *ff_create_visited(char *fname, char *wc_path);

#endif
""",
    "memory.c": """\
#include "findfile.h"

void *xmalloc(size_t size)
{
  void *ret = malloc(size);

  if (ret == NULL) {
    abort();
  }
  return ret;
}

char *xstrdup(const char *str)
{
  size_t len = strlen(str) + 1;

  return memcpy(xmalloc(len), str, len);
}

void xfree(void *ptr)
{
  free(ptr);
}
""",
    "findfile.c": """\
#include "findfile.h"

ff_stack_T *ff_create_stack_element(char *fix_part, char *wc_part, int level, int star_star_empty)
{
  ff_stack_T *new = xmalloc(sizeof(ff_stack_T));

  new->ffs_prev = NULL;
  new->ffs_filearray = NULL;
  new->ffs_filearray_size = 0;
  new->ffs_filearray_cur = 0;
  new->ffs_stage = 0;
  new->ffs_level = level;
  new->ffs_star_star_empty = star_star_empty;

  if (fix_part == NULL) {
    fix_part = "";
  }
  new->ffs_fix_path = xstrdup(fix_part);

  if (wc_part == NULL) {
    wc_part = "";
  }
  new->ffs_wc_path = xstrdup(wc_part);

  return new;
}

void ff_free_stack_element(ff_stack_T *stack_ptr)
{
  if (stack_ptr == NULL) {
    return;
  }
  xfree(stack_ptr->ffs_fix_path);
  xfree(stack_ptr->ffs_wc_path);
  xfree(stack_ptr);
}

ff_visited_T *ff_create_visited(char *fname, char *wc_path)
{
  ff_visited_T *vp = xmalloc(sizeof(ff_visited_T));

  vp->ffv_next = NULL;
  vp->ffv_fname = xstrdup(fname);
  return vp;
}
""",
}

ALLOC_PORTED = """\
ff_visited_T *ff_create_visited(char *fname, char *wc_path)
{
  ff_visited_T *vp = ALLOC_ONE(ff_visited_T);

  vp->ffv_next = NULL;
  vp->ffv_fname = xstrdup(fname);
  vp->ffv_wc_path = wc_path == NULL ? NULL : xstrdup(wc_path);
  return vp;
}"""

ALLOC_TRUTH = """\
ff_visited_T *ff_create_visited(char *fname, char *wc_path)
{
  ff_visited_T *vp = xmalloc(sizeof(ff_visited_T));

  vp->ffv_next = NULL;
  vp->ffv_fname = xstrdup(fname);
  vp->ffv_wc_path = wc_path == NULL ? NULL : xstrdup(wc_path);
  return vp;
}"""

ALLOC_FAULTS = [
    {
        "kind": "structural_macro_replace",
        "identifier": "ALLOC_ONE",
        "details": {"template": "xmalloc(sizeof($1))"},
        "lines": [2],
        "subjects": ["ALLOC_ONE"],
    },
]

GOLDEN = {
    "golden_scriptinfo": {
        "src": SCRIPTINFO_SRC,
        "tgt": SCRIPTINFO_TGT,
        "function": "f_getscriptinfo",
        "file": "scriptfile.c",
        "ported": SCRIPTINFO_PORTED,
        "ground_truth": SCRIPTINFO_TRUTH,
        "faults": SCRIPTINFO_FAULTS,
    },
    "golden_alloc": {
        "src": ALLOC_SRC,
        "tgt": ALLOC_TGT,
        "function": "ff_create_visited",
        "file": "findfile.c",
        "ported": ALLOC_PORTED,
        "ground_truth": ALLOC_TRUTH,
        "faults": ALLOC_FAULTS,
    },
}
