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
