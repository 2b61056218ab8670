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

long item_get_value(item_T *item, bool *error)
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
  if (name == NULL || *name == '\0') {
    *found = false;
    return 0;
  }
  *found = true;
  return (int)strlen(name);
}
