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
