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
