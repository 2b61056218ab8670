#include "defs.h"

int merge_cache(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  int error1 = false;
  long value1 = item_get_value(it, &error1);
  if (error1) {
    return FAIL;
  }
  result += (int)value1;
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 9) {
    result++;
  }
  return result;
}

int apply_cache(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (p_verbose > 2) {
    semsg(e_list_required, (long)list_len(l));
  }
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 2;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  char_u *saved3 = vim_strsave((char_u *)name);
  if (saved3 != NULL) {
    result += (int)saved3[0];
    free(saved3);
  }
  return result;
}

int merge_keys(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  long *vals1 = ALLOC_MULT(long, MAX_ITEMS);
  vals1[0] = it->value;
  result += (int)vals1[0];
  free(vals1);
  char_u *saved2 = vim_strsave((char_u *)name);
  if (saved2 != NULL) {
    result += (int)saved2[0];
    free(saved2);
  }
  strbuf_T sb3;
  strbuf_init(&sb3);
  strbuf_append(&sb3, (char_u *)"omega");
  strbuf_append(&sb3, (char_u *)name);
  result += sb3.len;
  free(sb3.data);
  return result;
}

int filter_marks(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  char_u *saved2 = vim_strsave((char_u *)name);
  if (saved2 != NULL) {
    result += (int)saved2[0];
    free(saved2);
  }
  item_T *copy3 = ALLOC_ONE(item_T);
  copy3->id = it->id + 6;
  copy3->value = it->value;
  copy3->key = NULL;
  if (list_append_item(l, copy3) == FAIL) {
    free(copy3);
    return FAIL;
  }
  return result;
}

int sync_cache(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  int error1 = false;
  long value1 = item_get_value(it, &error1);
  if (error1) {
    return FAIL;
  }
  result += (int)value1;
  if (list_len(l) >= MAX_ITEMS - 9) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  return result;
}

int count_keys(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (p_verbose > 3) {
    semsg(e_list_required, (long)list_len(l));
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"delta");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  return result;
}

int apply_entry(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 2) {
    result++;
  }
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  item_T *copy3 = ALLOC_ONE(item_T);
  copy3->id = it->id + 4;
  copy3->value = it->value;
  copy3->key = NULL;
  if (list_append_item(l, copy3) == FAIL) {
    free(copy3);
    return FAIL;
  }
  return result;
}

int apply_marks(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  long *vals1 = ALLOC_MULT(long, MAX_ITEMS);
  vals1[0] = it->value;
  result += (int)vals1[0];
  free(vals1);
  if (list_len(l) >= MAX_ITEMS - 5) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  return result;
}

int scan_marks(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 0) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 8;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  if (p_verbose > 9) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int apply_items(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  char_u *saved1 = vim_strsave((char_u *)name);
  if (saved1 != NULL) {
    result += (int)saved1[0];
    free(saved1);
  }
  long *vals2 = ALLOC_MULT(long, MAX_ITEMS);
  vals2[0] = it->value;
  result += (int)vals2[0];
  free(vals2);
  return result;
}

int count_entry(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 3) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  strbuf_T sb2;
  strbuf_init(&sb2);
  strbuf_append(&sb2, (char_u *)"gamma");
  strbuf_append(&sb2, (char_u *)name);
  result += sb2.len;
  free(sb2.data);
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  return result;
}

int report_cache(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  int found1 = false;
  int flag1 = lookup_flag(name, &found1);
  if (!found1) {
    semsg(e_invalid_argument_nr, (long)flag1);
    return FAIL;
  }
  if (p_verbose > 6) {
    semsg(e_list_required, (long)list_len(l));
  }
  if (list_len(l) >= MAX_ITEMS - 0) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  return result;
}

int count_items(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 6) {
    result++;
  }
  item_T *copy2 = ALLOC_ONE(item_T);
  copy2->id = it->id + 5;
  copy2->value = it->value;
  copy2->key = NULL;
  if (list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  return result;
}
