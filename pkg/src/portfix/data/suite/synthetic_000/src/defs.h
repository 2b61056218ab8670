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
int count_range(list_T *l, int id, char *name);
int sync_list(list_T *l, int id, char *name);
int collect_range(list_T *l, int id, char *name);
int apply_keys(list_T *l, int id, char *name);
int count_flags(list_T *l, int id, char *name);
int check_flags(list_T *l, int id, char *name);
int count_names(list_T *l, int id, char *name);
int reset_tags(list_T *l, int id, char *name);
int reset_cache(list_T *l, int id, char *name);
int count_cache(list_T *l, int id, char *name);
int collect_buffer(list_T *l, int id, char *name);
int apply_buffer(list_T *l, int id, char *name);

#endif
