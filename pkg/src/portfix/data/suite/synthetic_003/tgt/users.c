#include "defs.h"

int scan_values(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  long *vals1 = ALLOC_MULT(long, MAX_ITEMS);
  vals1[0] = it->value;
  result += (int)vals1[0];
  free(vals1);
  int found2 = false;
  int flag2 = lookup_flag(name, &found2);
  if (!found2) {
    semsg(e_invalid_argument_nr, (long)flag2);
    return FAIL;
  }
  return result;
}

int update_marks(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"theta");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  if (p_verbose > 7) {
    semsg(e_list_required, (long)list_len(l));
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  return result;
}

int filter_cache(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  if (it->key != NULL && STRLEN(it->key) > 2) {
    result++;
  }
  char_u *saved2 = vim_strsave((char_u *)name);
  if (saved2 != NULL) {
    result += (int)saved2[0];
    free(saved2);
  }
  int found3 = false;
  int flag3 = lookup_flag(name, &found3);
  if (!found3) {
    semsg(e_invalid_argument_nr, (long)flag3);
    return FAIL;
  }
  return result;
}

int collect_marks(list_T *l, int id, char *name)
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
  item_T *copy2 = xmalloc(sizeof(item_T));
  copy2->id = it->id + 8;
  copy2->value = it->value;
  copy2->key = NULL;
  if (tv_list_append_item(l, copy2) == FAIL) {
    free(copy2);
    return FAIL;
  }
  return result;
}

int apply_values(list_T *l, int id, char *name)
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
  if (list_len(l) >= MAX_ITEMS - 8) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  long *vals3 = ALLOC_MULT(long, MAX_ITEMS);
  vals3[0] = it->value;
  result += (int)vals3[0];
  free(vals3);
  return result;
}

int filter_values(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 7) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  item_T *copy3 = xmalloc(sizeof(item_T));
  copy3->id = it->id + 5;
  copy3->value = it->value;
  copy3->key = NULL;
  if (tv_list_append_item(l, copy3) == FAIL) {
    free(copy3);
    return FAIL;
  }
  return result;
}

int collect_buffer(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"kappa");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  if (l->first != NULL && item_compare(it, l->first) == 0) {
    result = OK;
  }
  long *vals3 = ALLOC_MULT(long, MAX_ITEMS);
  vals3[0] = it->value;
  result += (int)vals3[0];
  free(vals3);
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
  int found1 = false;
  int flag1 = lookup_flag(name, &found1);
  if (!found1) {
    semsg(e_invalid_argument_nr, (long)flag1);
    return FAIL;
  }
  if (p_verbose > 3) {
    semsg(e_list_required, (long)list_len(l));
  }
  if (it->key != NULL && STRLEN(it->key) > 2) {
    result++;
  }
  return result;
}

int reset_marks(list_T *l, int id, char *name)
{
  item_T *it = l->first;
  int result = OK;

  if (it == NULL || name == NULL) {
    return FAIL;
  }
  char_u *saved1 = vim_strsave((char_u *)name);
  if (saved1 != NULL) {
    result += (int)saved1[0];
    free(saved1);
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

int report_tags(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  if (list_len(l) >= MAX_ITEMS - 8) {
    semsg(e_buffer_full, (long)list_len(l));
    return FAIL;
  }
  int error2 = false;
  long value2 = item_get_value(it, &error2);
  if (error2) {
    return FAIL;
  }
  result += (int)value2;
  long *vals3 = ALLOC_MULT(long, MAX_ITEMS);
  vals3[0] = it->value;
  result += (int)vals3[0];
  free(vals3);
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
  if (it->key != NULL && STRLEN(it->key) > 5) {
    result++;
  }
  return result;
}

int report_items(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  int error1 = false;
  long value1 = item_get_value(it, &error1);
  if (error1) {
    return FAIL;
  }
  result += (int)value1;
  if (p_verbose > 9) {
    semsg(e_list_required, (long)list_len(l));
  }
  return result;
}

int update_range(list_T *l, int id, char *name)
{
  item_T *it = list_find_item(l, id);
  int result = OK;

  if (it == NULL) {
    semsg(e_item_not_found, (long)id);
    return FAIL;
  }
  strbuf_T sb1;
  strbuf_init(&sb1);
  strbuf_append(&sb1, (char_u *)"omega");
  strbuf_append(&sb1, (char_u *)name);
  result += sb1.len;
  free(sb1.data);
  int error2 = false;
  long value2 = item_get_value(it, &error2);
  if (error2) {
    return FAIL;
  }
  result += (int)value2;
  return result;
}
